#include <iostream>

#include "ApplyDiscount.hpp"

void applyDiscount(int &price, int discount, bool &isAffordable) {
    price = price - discount;
    isAffordable = price < 20;
}

int main(int argc, const char *argv[]) {
    int price = 25;
    int discount = 10;
    bool isAffordable;

    applyDiscount(price, discount, isAffordable);
    std::cout << price << std::endl;
    std::cout << std::boolalpha << isAffordable << std::endl;

    return 0;
}
