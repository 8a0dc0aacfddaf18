myName = [3, 1, 4]
print(myName)
myName.append(1)
myName[0] = 9
print(myName)
print(myName.index(4))
print(len(myName) > 3)
print(len(myName) > 4)
empty = []
print(empty)
