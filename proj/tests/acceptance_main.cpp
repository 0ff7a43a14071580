// Verification-suite runner: one line per criterion, nonzero exit on failure.
// Usage: acceptance [--criterion N]

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

#include "fibspec/verify.hpp"

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--criterion N]\n";
            return 1;
        }
    }
    std::vector<fibspec::CriterionResult> results;
    if (only > 0)
        results.push_back(fibspec::run_criterion(only));
    else
        results = fibspec::run_all_criteria();
    bool ok = fibspec::print_results(std::cout, results);
    return ok ? 0 : 1;
}
