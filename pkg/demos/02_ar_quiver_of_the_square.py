"""Chart the whole AR quiver of the commutative square by knitting from the simples,
then write it as Graphviz DOT.

    python3 demos/02_ar_quiver_of_the_square.py > square.dot
    dot -Tpng square.dot -o square.png
"""

import sys

from aralg import ar_quiver_fragment, commutative_square, simple_module

A = commutative_square()
frag = ar_quiver_fragment(A, [simple_module(A, v) for v in range(A.num_vertices)], steps=8)

print(f"{len(frag.nodes)} indecomposables, {len(frag.edges)} irreducible arrows, "
      f"{len(frag.tau)} translations", file=sys.stderr)
for i, (name, m) in enumerate(frag.nodes):
    t = frag.tau.get(i)
    print(f"  n{i:<2} {m.dim_vector()}" + (f"   tau = {frag.nodes[t][1].dim_vector()}" if t is not None else ""),
          file=sys.stderr)

print(frag.to_dot())
