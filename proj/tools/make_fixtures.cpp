// Writes the synthetic register and call datasets used by the test suite.
//
//   make_fixtures <out-dir>   ->  <out-dir>/register/, <out-dir>/call/

#include <exception>
#include <filesystem>
#include <iostream>

#include "reference_fixtures.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixtures <out-dir>\n";
        return 2;
    }
    try {
        const std::filesystem::path root = argv[1];
        refaudit::fixtures::write_register_dataset(root / "register", refaudit::fixtures::register_dataset());
        refaudit::fixtures::write_call_dataset(root / "call", refaudit::fixtures::call_dataset());
    } catch (const std::exception& e) {
        std::cerr << "make_fixtures: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
