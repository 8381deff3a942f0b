# Generator indices of the small transitive groups used by the families.
# Run: python3 demos/01_generator_index.py
from kfree.groups import generator_index, named_group

for name in ["S5", "A5", "D7", "C5", "C2WrSn(3)", "C2WrSnEven(3)", "PSL32", "AGL32"]:
    G = named_group(name)
    print(f"{name:>14}  degree {G.degree:2d}  order {G.order:5d}  gi {generator_index(G)}")

# A cyclic group of prime degree p is generated only by p-cycles, index p-1,
# while the symmetric group already has transpositions (index 1).
