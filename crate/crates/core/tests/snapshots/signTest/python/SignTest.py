def describeSign(foo):
    if foo > 0:
        print("foo is positive")
    elif foo < 0:
        print("foo is negative")
    else:
        print("foo is zero")

nums = [-1, 0, 1]
for n in nums:
    describeSign(n)

for i in range(0, 3):
    if i == 0:
        print("zero")
    elif i == 1:
        print("one")
    else:
        print("many")
