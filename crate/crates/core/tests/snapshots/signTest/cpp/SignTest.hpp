#ifndef SIGNTEST_HPP
#define SIGNTEST_HPP

void describeSign(int foo);

#endif
