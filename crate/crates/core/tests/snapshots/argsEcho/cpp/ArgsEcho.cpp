#include <iostream>
#include <string>
#include <vector>

int main(int argc, const char *argv[]) {
    std::string first = std::string(argv[1]);
    std::cout << first << std::endl;
    if (argc > 2) {
        std::cout << std::string(argv[2]) << std::endl;
    } else {
        std::cout << "no second argument" << std::endl;
    }
    std::cout << (int)(std::vector<std::string>(argv + 1, argv + argc).size()) << std::endl;

    return 0;
}
