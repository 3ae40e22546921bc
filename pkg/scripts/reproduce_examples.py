"""Recompute the headline numbers of the worked examples."""
import time

from jjalg import GF, QQ
from jjalg import fixtures as fx
from jjalg.algebras import check_structure
from jjalg.cohomology import ComplexContext, cohomology_report
from jjalg.deformations import trivial_deformation
from jjalg.relative_rb import RelRBContext
from jjalg.representations import regular_representation
from jjalg.search import SearchSpec, enumerate_solutions


def context(alg, t, species="jj"):
    return RelRBContext(alg, regular_representation(alg, species), t)


def main():
    f5 = GF(5)
    print("A4x Jacobi over Q: ", check_structure(fx.A4x(), "jacobi_jordan"))
    print("A4x Jacobi over F2:", check_structure(fx.A4x(GF(2, allow_small_char=True)),
                                                 "jacobi_jordan"))

    for name, alg, species in (("P2", fx.P2(f5), "prejj"), ("A3", fx.A3(f5), "jj")):
        t0 = time.perf_counter()
        res = enumerate_solutions(SearchSpec("relative_rb", (alg, regular_representation(alg, species))))
        print(f"{name} relative RB operators over F5: {res.count} ({time.perf_counter() - t0:.1f}s)")

    for name, ctx in (("A3 b2", context(fx.A3(), fx.a3_b2_operator())),
                      ("P2 T'", context(fx.P2(), fx.p2_T_prime(0, 1), "prejj"))):
        dims = [cohomology_report(ComplexContext(ctx), k)["dim_H"] for k in range(4)]
        print(f"{name}: dim H^0..H^3 = {dims}")

    ctx = context(fx.A3(), fx.a3_b2_operator())
    for t in (1, QQ("1/2"), -1):
        print(f"trivial deformation of T along e1 at t = {t}:",
              [[str(a) for a in row] for row in trivial_deformation(ctx, [1, 0, 0], t)])


if __name__ == "__main__":
    main()
