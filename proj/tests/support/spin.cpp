#include "spin.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace scrguide::testing
{

namespace fs = std::filesystem;

namespace
{

std::string slurp( const fs::path& path )
{
    std::ifstream in{ path };
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

int run_in( const fs::path& dir, const std::string& command, std::string& log )
{
    const fs::path out = dir / "out.txt";
    const std::string full = "cd '" + dir.string() + "' && " + command + " > out.txt 2>&1";
    const int status = std::system( full.c_str() );
    log += "$ " + command + "\n" + slurp( out );
    return status;
}

} // namespace

std::optional< std::string > find_spin()
{
    if ( const char* env = std::getenv( "SCRGUIDE_SPIN" ); env && *env )
        return fs::exists( env ) ? std::optional< std::string >{ env } : std::nullopt;
    const char* path = std::getenv( "PATH" );
    if ( !path )
        return std::nullopt;
    std::stringstream dirs{ path };
    std::string dir;
    while ( std::getline( dirs, dir, ':' ) )
    {
        const fs::path candidate = fs::path( dir ) / "spin";
        std::error_code ec;
        if ( !dir.empty() && fs::is_regular_file( candidate, ec ) )
            return candidate.string();
    }
    return std::nullopt;
}

std::optional< bool > spin_finds_violation( const std::string& spin, const std::string& model_text, std::string& log )
{
    std::random_device rd;
    const fs::path dir = fs::temp_directory_path() / ( "scrguide-spin-" + std::to_string( rd() ) );
    fs::create_directories( dir );
    {
        std::ofstream model{ dir / "model.pml" };
        model << model_text;
    }

    std::optional< bool > verdict;
    if ( run_in( dir, "'" + spin + "' -a model.pml", log ) == 0
         && run_in( dir, "cc -O2 -DSAFETY -DNOREDUCE -o pan pan.c", log ) == 0 )
    {
        run_in( dir, "./pan -m100000", log );
        const std::string out = slurp( dir / "out.txt" );
        if ( out.find( "errors:" ) != std::string::npos )
            verdict = out.find( "errors: 0" ) == std::string::npos;
    }
    std::error_code ec;
    fs::remove_all( dir, ec );
    return verdict;
}

} // namespace scrguide::testing
