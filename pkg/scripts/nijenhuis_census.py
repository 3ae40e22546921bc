"""Count Nijenhuis operators and Nijenhuis elements on the small algebras over F_p."""
import argparse

from jjalg import GF
from jjalg import fixtures as fx
from jjalg.deformations import NijenhuisCandidate, is_weight_rb_minus_one
from jjalg.relative_rb import RelRBContext
from jjalg.representations import regular_representation
from jjalg.search import SearchSpec, enumerate_solutions


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--skip-a3", action="store_true", help="skip the p^9 operator search on A3")
    args = ap.parse_args(argv)
    f = GF(args.p)

    algs = [("P2", fx.P2(f), "prejj"), ("Q3", fx.Q3(f), "prejj")]
    if not args.skip_a3:
        algs.append(("A3", fx.A3(f), "jj"))
    for name, alg, _ in algs:
        res = enumerate_solutions(SearchSpec("nijenhuis_operator", alg, p=args.p))
        weight = sum(1 for n in res.as_field() if is_weight_rb_minus_one(NijenhuisCandidate(alg, n)))
        print(f"{name}: {res.count} Nijenhuis operators, {weight} of them weight -1 Rota-Baxter")

    for name, alg, species, t in (("A3 b2", fx.A3(f), "jj", fx.a3_b2_operator(f)),
                                  ("P2 T'", fx.P2(f), "prejj", fx.p2_T_prime(0, 1, f))):
        ctx = RelRBContext(alg, regular_representation(alg, species), t)
        res = enumerate_solutions(SearchSpec("nijenhuis_element", ctx, p=args.p))
        print(f"{name}: {res.count} of {args.p ** alg.dim} elements are Nijenhuis elements")


if __name__ == "__main__":
    main()
