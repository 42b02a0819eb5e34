"""Almost split sequences over the four small test algebras.

Run:  python3 demos/01_almost_split_sequences.py
"""

from aralg import ar_sequence, curated_indecomposables, test_algebras
from aralg.ar import is_projective


def show(m):
    return "+".join("(" + ",".join(map(str, s.dim_vector())) + ")" for s in m) or "0"


for key, a in test_algebras().items():
    print(f"== {key}: {a.name}  (dim {a.dim})")
    mods = curated_indecomposables(a)
    for n in mods:
        if is_projective(n):
            continue
        cert = ar_sequence(n, mods)
        s = cert.sequence
        # 0 -> DTr N -> E -> N -> 0, certified against every curated module
        print(f"  0 -> {s.L.dim_vector()} -> {show(cert.middle_summands())} -> {n.dim_vector()} -> 0"
              f"   [{n.name}]  certified={cert.ok}")
