#include <cstdlib>
#include <iostream>
#include <string>

#include "repro.hpp"

int main(int argc, char** argv) {
    rainbow::repro::ReproOptions opts;
    for (int i = 1; i + 1 < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--threads") opts.threads = static_cast<unsigned>(std::stoul(argv[++i]));
        else if (a == "--seed") opts.seed = std::stoull(argv[++i]);
    }
    int failures = 0;
    for (int id = 1; id <= 10; ++id) {
        rainbow::repro::CriterionResult res;
        try {
            res = rainbow::repro::run_criterion(id, opts);
        } catch (const std::exception& e) {
            res.id = id;
            res.name = "criterion";
            res.pass = false;
            res.detail = std::string("exception: ") + e.what();
        }
        std::cout << rainbow::repro::format_result(res) << std::endl;
        if (!res.pass) ++failures;
    }
    std::cout << (10 - failures) << "/10 criteria passed" << std::endl;
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
