#include <iostream>
#include <string>
#include <vector>

#include "PatternTest.hpp"

void Observer::printNum() {
    std::cout << "notified" << std::endl;
}

int main(int argc, const char *argv[]) {
    int n;
    std::string myFSM = "Off";
    myFSM = "On";
    if (myFSM == "Off") {
        std::cout << "Off" << std::endl;
    } else if (myFSM == "On") {
        std::cout << "On" << std::endl;
    } else {
        std::cout << "Neither" << std::endl;
    }

    Observer obs1 = Observer();
    Observer obs2 = Observer();

    std::vector<Observer> observerList = std::vector<Observer> {obs1};
    observerList.push_back(obs2);
    for (std::vector<Observer>::iterator observer = observerList.begin(); observer != observerList.end(); observer++) {
        observer->printNum();
    }

    std::cout << "Doubling" << std::endl;
    n = 21 * 2;

    std::cout << n << std::endl;

    return 0;
}
