#include <iostream>
#include <string>
#include <vector>

#include "nspec/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto result = nspec::cli::run(args);
    std::cout << result.out;
    if (!result.out.empty() && result.out.back() != '\n') std::cout << "\n";
    return result.status;
}
