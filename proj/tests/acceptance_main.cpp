#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "sslab/acceptance.hpp"

int main(int argc, char** argv) {
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
    sslab::Settings s = sslab::settings_from_environment();
    sslab::AcceptanceReport r = sslab::run_acceptance(s, only, &std::cout);
    int passed = 0;
    for (const auto& c : r.results) passed += c.pass ? 1 : 0;
    std::cout << passed << "/" << r.results.size() << " criteria passed" << std::endl;
    return r.pass() ? 0 : 1;
}
