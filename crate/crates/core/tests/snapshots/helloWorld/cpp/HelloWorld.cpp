/**
 * \brief Greets the user
 */

#include <iostream>
#include <string>

int main(int argc, const char *argv[]) {
    std::cout << "Hello, world!" << std::endl;
    std::string name;
    std::getline(std::cin, name);
    std::cout << "Hello, ";
    std::cout << name << std::endl;

    int count = 3;
    while (count > 0) {
        std::cout << count << std::endl;
        count--;
    }
    std::cout << "Liftoff" << std::endl;

    return 0;
}
