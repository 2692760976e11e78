#!/usr/bin/env python3
"""Standard simplices, boundaries, horns, and the normal form for cells.

Every simplex is stored as a nondegenerate cell plus a strictly
decreasing degeneracy word, so a simplicial set only ever lists its
nondegenerate cells.  Faces and degeneracies act by composing monotone
maps and re-factoring.
"""

from sslift import (
    SimplexRef,
    boundary,
    horn,
    opposite,
    standard_simplex,
)

for n in (1, 2, 3):
    d = standard_simplex(n)
    print(f"Delta^{n}: nondegenerate cells by degree {d.counts()}")
    print(f"  all 2-simplices including degenerate ones: {len(d.refs(2))}")

b = boundary(3)
print(f"\nboundary Delta^3: {b.counts()}  (the 2-sphere)")
for i in range(4):
    h = horn(3, i)
    print(f"Lambda^3_{i}: {h.counts()}")

# the normal form in action: act by a non-monotone-free word and refactor
d2 = standard_simplex(2)
top = SimplexRef(2, (), "0.1.2")
edge = d2.face(top, 1)
print(f"\nd_1 of the top cell of Delta^2: {edge}")
degenerate = d2.act(top, (0, 0, 1, 2))
print(f"s_0 applied to it: {degenerate}")
print(f"faces of that degenerate 3-simplex: "
      f"{[d2.face(degenerate, j) for j in range(4)]}")

op = opposite(d2)
print(f"\nopposite of Delta^2 has the same counts: {op.counts()}")
