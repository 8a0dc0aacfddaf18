## \brief Arithmetic helpers

## \brief Adds two numbers
#  \param num1 First addend
#  \param num2 Second addend
#  \return The sum
def add(num1, num2):
    return num1 + num2
