"""The AR triangle in the homotopy category of injectives ending at the regular
module of k[x]/(x^2), and what its third map looks like.
"""

from aralg import ar_triangle_of_module, dual_numbers, regular_module, simple_module, triangle_to_sequence
from aralg.ar import gamma_as_multiplication

A = dual_numbers()

data = ar_triangle_of_module(regular_module(A), window=(-4, 4), guard=2)
tri = data.triangle
for label, c in (("X", tri.X), ("Y", tri.Y), ("Z", tri.Z)):
    print(label, {n: m.dim for n, m in sorted(c.objects.items())})

u = gamma_as_multiplication(tri)
print("gamma nonzero:", data.gamma_nonzero, " kills the radical:", data.kills_radical)
print("gamma is left multiplication by",
      " + ".join(f"{c}*{lab}" for c, lab in zip(u.entries(), A.labels) if c != 0))

# for a non-projective module, taking cycles in degree 0 recovers the almost split sequence
s_tri = ar_triangle_of_module(simple_module(A, 0))
cert = triangle_to_sequence(s_tri.triangle)
print("Z^0 of the triangle for S:", cert.sequence.L.dim, "->", cert.sequence.M.dim, "->", cert.sequence.N.dim,
      " certified:", cert.ok)
