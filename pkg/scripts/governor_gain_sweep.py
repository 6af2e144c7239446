"""Steady-state speed offset of the governed engine after a load step, against valve gain."""
import argparse

from artloop.controllers import reference_speed, GovernorController
from artloop.scenario import builtin_source, parse_scenario, run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gains", type=float, nargs="+", default=[0.5, 1, 2, 4, 8])
    ap.add_argument("--cycles", type=int, default=8000)
    ap.add_argument("--csv", help="write omega(t) for every gain to this file")
    args = ap.parse_args()
    at = args.cycles // 2
    src = builtin_source("governor").replace("at=1000", f"at={at}").replace("cycles=2000", f"cycles={args.cycles}")
    columns = {}
    for g in args.gains:
        sc = parse_scenario(src, [f"controller.valve_gain={g}"])
        c = sc.controller
        w_re = reference_speed(GovernorController(0.0, 0.0, c["l1"], c["beta"], c["c0"], c["c1"], c["x_re"],
                                                  g, c["v0"], c["g"]))
        trace = run(sc)
        omega = trace.column("y")
        columns[g] = omega
        before, after = omega[at - 1], omega[-1]
        print(f"gain {g:5g}: omega before step {before:.5f}, after {after:.5f}, "
              f"offset |omega - omega_re| = {abs(after - w_re):.5f} (omega_re {w_re:.5f}), "
              f"verdict {'PASS' if trace.verdict.passed else 'FAIL'}")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("cycle," + ",".join(f"gain_{g:g}" for g in args.gains) + "\n")
            for i in range(args.cycles):
                fh.write(f"{i}," + ",".join(f"{columns[g][i]:.9g}" for g in args.gains) + "\n")


if __name__ == "__main__":
    main()
