"""Sheets of SL_n grouped into strata by central translation, n = 2..5.

Each sheet is checked for the combinatorial smoothness criterion: one branch
at every isolated class in its regular closure.
"""

from jordanstrata.core import build_root_system
from jordanstrata.localgeom import sheet_smooth_classical
from jordanstrata.stratify import sln_strata

for n in range(2, 6):
    rs = build_root_system(f"A{n - 1}")
    strata = sln_strata(n)
    print(f"SL_{n}: {len(strata)} strata")
    for s in strata:
        smooth = all(sheet_smooth_classical(rs, u)[0] for u in s.translates)
        print(f"    {s.sheet}  components={s.components} disjoint={s.disjoint} smooth={smooth}")
