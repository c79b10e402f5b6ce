"""Defect decay next to winding persistence for the Z^2 shift/clock family.

Prints, for each n, the operator and Schatten defects over the generator
window, the 2 pi / n reference, and the unnormalized Hopf winding.

    python scripts/defect_decay.py --n-max 1024 --p 2 4
"""

import argparse
import math

from winding_obstruction.almostrep import defect_report, generator_window, perturb, z2_projective_rep
from winding_obstruction.groups import Z2
from winding_obstruction.linalg import TraceKind
from winding_obstruction.obstruction import pairing_hopf, winding


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--n-min", type=int, default=8)
    parser.add_argument("--n-max", type=int, default=512)
    parser.add_argument("--p", type=float, nargs="*", default=[2.0])
    parser.add_argument("--charge", type=int, default=1)
    parser.add_argument("--eps", type=float, default=0.0)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    ps = sorted(set(args.p))
    head = f"{'n':>6} {'2pi/n':>10} {'op':>10} " + " ".join(f"{'S' + format(p, 'g'):>10}" for p in ps) + f" {'winding':>8}"
    print(head)
    x, y = Z2.generators()
    n = args.n_min
    while n <= args.n_max:
        rep = perturb(z2_projective_rep(n, TraceKind.UNNORMALIZED, args.charge), args.eps, args.seed)
        report = defect_report(rep, generator_window(rep), ps + [math.inf])
        k, _ = winding(pairing_hopf(rep, [(x, y)]))
        cols = " ".join(f"{report.sup_schatten(p):>10.4e}" for p in ps)
        print(f"{n:>6} {2 * math.pi / n:>10.4e} {report.sup_op:>10.4e} {cols} {str(k):>8}")
        n *= 2


if __name__ == "__main__":
    main()
