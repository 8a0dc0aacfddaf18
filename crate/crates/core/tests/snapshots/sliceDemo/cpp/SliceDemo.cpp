#include <iostream>
#include <vector>

int main(int argc, const char *argv[]) {
    std::vector<double> ages = std::vector<double> {10.0, 20.5, 30.0, 40.25};
    std::vector<double> someAges = std::vector<double>();
    std::vector<double> temp(0);
    for (int i_temp = 1; i_temp < 3; i_temp++) {
        temp.push_back(ages.at(i_temp));
    }
    someAges = temp;
    std::cout << "[";
    for (int list_i1 = 0; list_i1 < (int)(someAges.size()) - 1; list_i1++) {
        std::cout << someAges.at(list_i1);
        std::cout << ", ";
    }
    if ((int)(someAges.size()) > 0) {
        std::cout << someAges.at((int)(someAges.size()) - 1);
    }
    std::cout << "]" << std::endl;
    std::cout << (int)(someAges.size()) << std::endl;
    std::cout << someAges.at(0) << std::endl;

    return 0;
}
