#include <algorithm>
#include <iostream>
#include <vector>

int main(int argc, const char *argv[]) {
    std::vector<int> myName = std::vector<int> {3, 1, 4};
    std::cout << "[";
    for (int list_i1 = 0; list_i1 < (int)(myName.size()) - 1; list_i1++) {
        std::cout << myName.at(list_i1);
        std::cout << ", ";
    }
    if ((int)(myName.size()) > 0) {
        std::cout << myName.at((int)(myName.size()) - 1);
    }
    std::cout << "]" << std::endl;
    myName.push_back(1);
    myName.at(0) = 9;
    std::cout << "[";
    for (int list_i1 = 0; list_i1 < (int)(myName.size()) - 1; list_i1++) {
        std::cout << myName.at(list_i1);
        std::cout << ", ";
    }
    if ((int)(myName.size()) > 0) {
        std::cout << myName.at((int)(myName.size()) - 1);
    }
    std::cout << "]" << std::endl;
    std::cout << std::find(myName.begin(), myName.end(), 4) - myName.begin() << std::endl;
    std::cout << std::boolalpha << ((int)(myName.size()) > 3) << std::endl;
    std::cout << std::boolalpha << ((int)(myName.size()) > 4) << std::endl;
    std::vector<int> empty = std::vector<int>();
    std::cout << "[";
    for (int list_i1 = 0; list_i1 < (int)(empty.size()) - 1; list_i1++) {
        std::cout << empty.at(list_i1);
        std::cout << ", ";
    }
    if ((int)(empty.size()) > 0) {
        std::cout << empty.at((int)(empty.size()) - 1);
    }
    std::cout << "]" << std::endl;

    return 0;
}
