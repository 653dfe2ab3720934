"""Walk through the F_3 cubic surface: points, code, residue lines, decoding."""

import numpy as np

from surfcodes import codes, ldpc, parity, projgeo
from surfcodes.gf import field_new

F3 = field_new(3)
S = projgeo.parse_surface("X^3+Y^3+Z^3-Z*X^2-X*Y^2-Y*Z^2+X*Z^2+T^3", F3)
affine, at_inf = projgeo.surface_points(S)
print(f"{len(affine)} affine points, {len(at_inf)} at infinity")

C = codes.functional_code(S, 1, affine)
print(f"code [{C.n}, {C.k}, {codes.min_distance_bruteforce(C)}], dual distance {codes.dual_min_distance(C)}")

res = parity.is_positive_test(S, 1, affine)
print(f"{len(res.matrix.rows)} lines meet the surface in 3 affine points; rank {res.rank} of {C.n - C.k}")
for r in res.matrix.rows:
    print("  support", [i + 1 for i in r.support], "entries", [c for _, c in r.entries])

# corrupt one symbol of a codeword and decode on the residue Tanner graph
graph = ldpc.tanner_from_matrix(res.matrix)
c = C.generator[0].copy()
y = c.copy()
y[4] = F3.add(int(y[4]), 1)
out = ldpc.decode(graph, y)
print("sent    ", c.tolist())
print("received", y.tolist())
print("decoded ", list(out.word), "ok" if np.array_equal(out.word, c) else "failed")
