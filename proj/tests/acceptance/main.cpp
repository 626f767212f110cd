#include "frobavg/verify.hpp"

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

// acceptance [criterion ids...]: one PASS/FAIL line per criterion, nonzero exit on any failure
int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::stoi(argv[i]));
    const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    bool ok = true;
    frobavg::verify::run_all(ids, threads, [&](const frobavg::verify::CriterionResult& r) {
        std::cout << frobavg::verify::format_result(r) << std::endl;
        ok = ok && r.pass;
    });
    return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
