#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scrguide
{

// Exit codes of the command-line tool.
enum exit_code : int
{
    exit_ok = 0,      // success, or no violation within the bound
    exit_finding = 1, // violation, consistency error
    exit_usage = 2    // bad arguments, unreadable or invalid input files
};

// Runs the command line `args` (without the program name).
int run_cli( const std::vector< std::string >& args, std::ostream& out, std::ostream& err );

} // namespace scrguide
