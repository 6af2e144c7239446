"""Run and verify every bundled scenario; print one summary row each."""
import argparse
import time

from artloop.core import SQUARE_ORDER
from artloop.scenario import BUILTINS, load_builtin, run, verify


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cycles", type=int, help="override run.cycles for every scenario")
    args = ap.parse_args()
    overrides = [f"run.cycles={args.cycles}"] if args.cycles else []
    print(f"{'scenario':<20}{'cycles':>8}" + "".join(f"{s:>14}" for s in SQUARE_ORDER) + f"{'verdict':>9}{'secs':>7}")
    for name in BUILTINS:
        t0 = time.perf_counter()
        rep = verify(run(load_builtin(name, overrides)))
        secs = time.perf_counter() - t0
        cols = "".join(f"{rep.squares[s].max_residual:>14.3g}" for s in SQUARE_ORDER)
        print(f"{name:<20}{rep.cycles:>8}{cols}{'PASS' if rep.passed else 'FAIL':>9}{secs:>7.2f}")


if __name__ == "__main__":
    main()
