"""Serre duality D Hom(X, Y) = Hom(Y, tX) on compact objects, checked pair by pair."""

from aralg import a2, dual_numbers
from aralg.verify import verify_serre, verify_translate_faithful

for A in (dual_numbers(), a2()):
    rep = verify_serre(A, window=(-6, 6), guard=2, stability_window=(-8, 8))
    print(f"== {A.name}: {len(rep.rows)} pairs, all good = {rep.passed}")
    for r in rep.rows:
        if r.hom_xy:
            print(f"  Hom({r.first}, {r.second}) = {r.hom_xy}   Hom({r.second}, t{r.first}) = {r.hom_ytx}")
    ff = verify_translate_faithful(A, (-6, 6), 2)
    print("  t fully faithful on these pairs:", ff.passed)
