"""Plant-face residual of the thermostat loop as dt shrinks, for both integrators."""
import argparse

from artloop.scenario import load_builtin, run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--horizon", type=float, default=20.0, help="simulated seconds per run")
    args = ap.parse_args()
    print(f"{'dt':>8}{'euler max':>14}{'ratio':>8}{'rk4 max':>14}{'ratio':>8}")
    prev = {}
    for dt in (0.2, 0.1, 0.05, 0.025, 0.0125):
        row = f"{dt:>8g}"
        for method in ("euler", "rk4"):
            sc = load_builtin("thermostat-digital", [f"run.dt={dt}", f"run.cycles={round(args.horizon / dt)}",
                                                     f"run.integrator={method}"])
            worst = max(run(sc).column("plant"))
            ratio = prev[method] / worst if method in prev and worst > 0 else float("nan")
            prev[method] = worst
            row += f"{worst:>14.3e}{ratio:>8.2f}"
        print(row)


if __name__ == "__main__":
    main()
