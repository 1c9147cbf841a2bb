// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Usage: acceptance [--workers N] [--seed S] [criterion ids...]

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "mfrisk/app/acceptance.hpp"

int main(int argc, char** argv)
{
    using namespace mfrisk::app;
    AcceptanceOptions opt;
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i)
    {
        if (!std::strcmp(argv[i], "--workers") && i + 1 < argc)
            opt.workers = unsigned(std::atoi(argv[++i]));
        else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc)
            opt.seed = std::strtoull(argv[++i], nullptr, 10);
        else
            ids.push_back(std::atoi(argv[i]));
    }
    if (ids.empty())
        ids = all_criteria();

    int failed = 0;
    for (int id : ids)
    {
        auto const r = run_criterion(id, opt);
        std::cout << format_line(r) << std::endl;
        failed += !r.passed;
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << ids.size() - failed
              << "/" << ids.size() << std::endl;
    return failed ? 1 : 0;
}
