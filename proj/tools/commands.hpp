#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fair_cover::cli
{
    enum ExitCode
    {
        exit_yes = 0,
        exit_no = 1,
        exit_error = 2,
        exit_timeout = 3
    };

    /// Entry point shared by the executable and the contract tests.  args excludes argv[0].
    auto run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;

    /// FAIR_COVER_THREADS if set and positive, else the hardware concurrency.
    auto worker_count() -> int;
}
