"""How well the digital thermostat holds its band, for the sample room and variants of it.

The sample room with P_max=1 only just reaches the set point with the heater
full on; after the ambient step to 5 it cannot reach the band at all.
"""
import argparse

from artloop.scenario import parse_scenario, run

SAMPLE = """scenario "thermostat-basic"
topology serial
plant thermal { T0=18.0  T_amb=10.0  C_th=1.0  k_loss=0.1  P_max=%(P)s }
controller bangbang { T_re=20.0  h=1.0 }
run { dt=0.01  cycles=%(cycles)d  integrator=rk4  seed=42 }
epsilon { encode=0.0  controller=0.0  decode=0.0  plant=0.001 }
"""
STEP = "disturb { at=%(at)d  set=T_amb  value=5.0 }\n"


def in_band(ys, lo=18.9, hi=21.1):
    tail = ys[len(ys) // 4:]
    return sum(lo <= y <= hi for y in tail) / len(tail), min(tail), max(tail)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cycles", type=int, default=20000)
    args = ap.parse_args()
    cases = [("sample, with ambient step", 1.0, True), ("sample, no step", 1.0, False),
             ("P_max=2, no step", 2.0, False), ("P_max=2, with ambient step", 2.0, True)]
    for label, P, step in cases:
        src = SAMPLE % {"P": P, "cycles": args.cycles}
        if step:
            src += STEP % {"at": args.cycles // 2}
        trace = run(parse_scenario(src))
        frac, lo, hi = in_band(trace.column("y"))
        s = trace.column("s")
        switches = sum(a != b for a, b in zip(s, s[1:]))
        print(f"{label:<28} in band {frac:6.3f}   T in [{lo:7.3f}, {hi:7.3f}]   switches {switches:4d}   "
              f"verdict {'PASS' if trace.verdict.passed else 'FAIL'}")


if __name__ == "__main__":
    main()
