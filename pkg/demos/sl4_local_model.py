"""Branches of a Jordan class closure near a point of SL_4.

tau = (T <X_{+-alpha_1}>, Z(M)^o, 1) and r has centraliser of type 2A1.  At r
the closure has two branches; once the unipotent part v is regular on the
second factor only one survives.
"""

from jordanstrata.core import build_root_system
from jordanstrata.fixtures import SL4_EXAMPLE
from jordanstrata.localgeom import local_model
from jordanstrata.orbits import parse_orbit_label
from jordanstrata.stratify import group_point, jordan_triple

ex = SL4_EXAMPLE
rs = build_root_system(ex["type"])
t = jordan_triple(rs, ex["pi"], ex["x_s"])
r = group_point(rs, ex["x_r"])
rv = group_point(rs, ex["x_r"], [parse_orbit_label(s) for s in ex["v"]])

for name, p in [("r", r), ("rv", rv)]:
    m = local_model(rs, t, p)
    print(f"{name}: centraliser {m.centralizer_type}, {m.count} branch(es)")
    for b, w in zip(m.branches, m.representatives):
        print(f"    {b}   via w = {w}")
