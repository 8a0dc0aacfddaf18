#ifndef FOOCLASSGETSET_HPP
#define FOOCLASSGETSET_HPP

/**
 * \brief Holds a single number
 */
class FooClass {
public:
    int getFoo();

    void setFoo(int foo);

private:
    int foo = 0;
};

#endif
