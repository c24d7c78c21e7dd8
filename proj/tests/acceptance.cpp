// Prints one line per acceptance criterion; exit status 1 if any selected criterion fails.

#include <iostream>

#include "CLI11.hpp"
#include "pcv/checks.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria 1-9"};
    std::vector<int> ids;
    bool verbose = false;
    app.add_option("--criterion", ids, "criterion number (repeatable, default all)")->check(CLI::Range(1, 9));
    app.add_flag("-v,--verbose", verbose, "print every note");
    CLI11_PARSE(app, argc, argv);
    if (ids.empty()) ids = {1, 2, 3, 4, 5, 6, 7, 8, 9};

    const pcv::OperatorData data = pcv::OperatorData::embedded();
    bool all = true;
    for (const auto& r : pcv::run_checks(ids, data)) {
        all = all && r.pass;
        std::cout << pcv::format_check_line(r) << std::endl;
        // failures always show their detail
        if (verbose || !r.pass)
            for (std::size_t i = 1; i < r.notes.size(); ++i) std::cout << "    " << r.notes[i] << "\n";
    }
    return all ? 0 : 1;
}
