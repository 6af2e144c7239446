"""Parity-checked fetches with rollback: final accumulator and reset counts across seeds and flip rates."""
import argparse

from artloop.plants import make_program
from artloop.scenario import load_builtin, run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--rates", type=float, nargs="+", default=[0.0, 0.05, 0.1, 0.2, 0.4])
    args = ap.parse_args()
    base = load_builtin("agc-parity")
    truth = 0
    for w in make_program(base.plant["words"], base.plant["program_seed"]):
        truth = (truth + (w & 0x7FFF)) & 0x7FFF
    for p in args.rates:
        correct = flips = resets = unfinished = 0
        for seed in range(args.seeds):
            # generous cycle budget: each reset costs two cycles
            sc = load_builtin("agc-parity", [f"plant.p_flip={p}", f"run.seed={seed}", "run.cycles=2000"])
            last = run(sc).records[-1].plant_state
            correct += last["acc"] == truth
            flips += int(last["flips"])
            resets += int(last["resets"])
            unfinished += not last["halted"]
        print(f"p_flip {p:4.2f}: {correct}/{args.seeds} correct, flips {flips}, resets {resets}, "
              f"unfinished {unfinished}")


if __name__ == "__main__":
    main()
