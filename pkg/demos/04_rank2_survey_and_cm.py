"""Mini survey over the 29 rank-2 cases: the single-valued scalar c from
the series route, rho where a route exists, and the CM rationality
contrast (CM cases reconstruct to small rationals, non-CM do not).

The full survey is `svp table`; this demo keeps depths small so it runs
in about a minute.
"""

from svperiods import catalog, svp

print("%4s %3s %3s  %-8s %12s %12s" % ("N", "wt", "CM", "recipe", "c (series)", "rho"))
for case in catalog.rank_two_table():
    c_max = 20_000 if case.weight == 2 else 3_000
    res = svp.rank2_c_from_poincare(case, c_max=c_max)
    try:
        rho = svp.rank2_rho(case, route="auto", n_max=4, c_max=c_max).rho
        rho_s = "%12.6f" % rho
    except ValueError:
        rho_s = "%12s" % "-"
    print("%4d %3d %3s  %-8s %12.6f %s"
          % (case.level, case.weight, "yes" if case.cm else "", catalog.recipe_kind(case),
             res.c, rho_s))

print("\nCM rationality contrast (continued-fraction reconstruction):")
for key in ((9, 4), (27, 2), (11, 2)):
    case = catalog.lookup_case(*key)
    rep = svp.cm_rationality_check(case, n_max=6, c_max=10**4 if case.weight == 4 else 10**5)
    tag = "pass" if rep["verdict"] else "fail"
    sample = ", ".join("a_%d ~ %s" % (r["n"], r["rational"]) for r in rep["rows"][:4])
    print("  (%2d,%d) cm=%-5s -> %s  (%s)" % (case.level, case.weight, case.cm, tag, sample))
