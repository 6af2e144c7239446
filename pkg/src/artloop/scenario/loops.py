"""Plant and controller adapters that turn one unwound cycle into a compute cube.

Each adapter owns the physical quantities of its half of the loop, the
representations of those quantities, and the pair of evolutions (physical H,
abstract C) that the cube compares.  Naming is uniform across kinds: the
plant output is abstract `y`, the controller output abstract `s`, the plant
input abstract `u`.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from ..controllers import (
    BimetalCoil, GovernorController, HumanPolicy, ProportionalController, Signal, Topology,
    bimetal_decide, collar_height, governor_abstract_step, governor_step,
    human_policy_decide, matched_contact_position, proportional_decide, round_half_away,
    summing_junction, valve_command, xor_parity,
)
from ..core import (
    AbstractState, BitWord, CommutationSquare, ComputeCube, Metric, PhysicalState, Quantity,
    RepresentationPair, Unit, bitword_map, boolean_map, identity_map, instantiate, represent,
)
from ..plants import (
    ACC_WIDTH, WORD_WIDTH, EnginePlant, ProcessorPlant, ThermalPlant, accumulate, clamp,
    engine_abstract_step, engine_step, make_program, processor_step, thermal_abstract_step,
    thermal_step,
)
from .dsl import ControlScenario

DIM = Unit.DIMENSIONLESS


def _flag(b) -> float:
    return 1.0 if b else 0.0


def _memo(fn, p0, out):
    """Physical evolution that reuses the already computed image of p0."""
    return lambda p: out if p is p0 else fn(p)


# -- plants ---------------------------------------------------------------------

class PlantLoop:
    output_name: str
    output_unit: Unit
    input_name: str
    input_rep: RepresentationPair
    output_rep: RepresentationPair
    rep: RepresentationPair
    metric: Metric

    def __init__(self, sc: ControlScenario):
        self.sc = sc
        self.dt = sc.dt

    def input_state(self, u, t: float) -> PhysicalState:
        return PhysicalState(t, {self.input_name: Quantity(u, self.input_unit)})


class ThermalLoop(PlantLoop):
    output_name, output_unit = "T", Unit.KELVIN
    input_name, input_unit = "heater", DIM
    output_rep = RepresentationPair("thermal", (identity_map("T", Unit.KELVIN, "y"),))
    input_rep = RepresentationPair("thermal", (identity_map("heater", DIM, "u"),))
    rep = RepresentationPair("thermal", (identity_map("T", Unit.KELVIN), identity_map("heater", DIM, "u")))
    metric = Metric.weighted(T=1.0)

    def initial(self) -> PhysicalState:
        return PhysicalState.of(0.0, T=(self.sc.plant["T0"], Unit.KELVIN))

    def _plant(self, T: float, params: dict) -> ThermalPlant:
        return ThermalPlant(T, params["T_amb"], params["C_th"], params["k_loss"], params["P_max"])

    def physical(self, p: PhysicalState, params: dict, t1: float) -> PhysicalState:
        nxt = thermal_step(self._plant(p["T"], params), p["heater"], self.dt, self.sc.integrator)
        return p.updated(time=t1, T=nxt.T)

    def abstract(self, m: AbstractState, params: dict) -> AbstractState:
        T = thermal_abstract_step(m["T"], m["u"], self.dt, self._plant(m["T"], params))
        return AbstractState({"T": T, "u": m["u"]})


class EngineLoop(PlantLoop):
    output_name, output_unit = "omega", Unit.RADIAN_PER_SECOND
    input_name, input_unit = "valve", DIM
    output_rep = RepresentationPair("shaft", (identity_map("omega", Unit.RADIAN_PER_SECOND, "y"),))
    input_rep = RepresentationPair("shaft", (identity_map("valve", DIM, "u"),))
    rep = RepresentationPair("shaft", (identity_map("omega", Unit.RADIAN_PER_SECOND),
                                       identity_map("valve", DIM, "u")))
    metric = Metric.weighted(omega=1.0)

    def initial(self) -> PhysicalState:
        return PhysicalState.of(0.0, omega=(self.sc.plant["omega0"], Unit.RADIAN_PER_SECOND))

    def _plant(self, omega: float, valve: float, params: dict) -> EnginePlant:
        return EnginePlant(omega, params["J"], params["tau_max"], params["tau_load"], valve)

    def physical(self, p, params, t1):
        nxt = engine_step(self._plant(p["omega"], p["valve"], params), p["valve"], self.dt,
                          self.sc.integrator)
        return p.updated(time=t1, omega=nxt.omega, valve=nxt.valve)

    def abstract(self, m, params):
        w = engine_abstract_step(m["omega"], m["u"], self.dt, self._plant(m["omega"], m["u"], params))
        return AbstractState({"omega": w, "u": m["u"]})


class ProcessorLoop(PlantLoop):
    """The memory/processor pair; its represented state is the committed machine state."""
    output_name, output_unit = "bus", Unit.BITS
    input_name, input_unit = "reset", DIM
    output_rep = RepresentationPair("machine", (bitword_map("bus", "y", WORD_WIDTH),))
    input_rep = RepresentationPair("machine", (boolean_map("reset", "u"),))
    rep = RepresentationPair("machine", (
        identity_map("pc", DIM), bitword_map("acc", "acc", ACC_WIDTH),
        boolean_map("latch", "latch"), boolean_map("loaded", "loaded"),
        boolean_map("halted", "halted"), boolean_map("reset", "u")))
    metric = Metric.weighted(pc=1.0, acc=1.0, latch=1.0, loaded=1.0, halted=1.0)

    def __init__(self, sc):
        super().__init__(sc)
        self.storage = make_program(sc.plant["words"], sc.plant["program_seed"])
        ff = sc.plant.get("force_flip_at")
        self.force_cycle = None if ff is None else ff - 1
        self.force_bit = sc.plant.get("force_bit") or 0

    def input_state(self, u, t):
        return PhysicalState(t, {"reset": Quantity(_flag(u), DIM)})

    def initial(self) -> PhysicalState:
        return self.to_state(ProcessorPlant.boot(self.storage, self.sc.plant["p_flip"], self.sc.seed), 0.0)

    @staticmethod
    def to_state(pl: ProcessorPlant, t: float) -> PhysicalState:
        B = Unit.BITS
        return PhysicalState(t, {
            "pc": Quantity(float(pl.pc), DIM),
            "acc": Quantity(pl.acc, B, ACC_WIDTH),
            "ckpt_pc": Quantity(float(pl.checkpoint[0]), DIM),
            "ckpt_acc": Quantity(pl.checkpoint[1], B, ACC_WIDTH),
            "latch": Quantity(_flag(pl.latch), DIM),
            "loaded": Quantity(_flag(pl.pending is not None), DIM),
            "pending": Quantity(pl.pending or 0, B, WORD_WIDTH),
            "halted": Quantity(_flag(pl.halted), DIM),
            "bus": Quantity(pl.bus.value, B, WORD_WIDTH),
            "flips": Quantity(float(pl.flips), DIM),
            "resets": Quantity(float(pl.resets), DIM),
        })

    def from_state(self, p: PhysicalState, params: dict) -> ProcessorPlant:
        return ProcessorPlant(
            self.storage, params["p_flip"], self.sc.seed, int(p["pc"]), p["acc"],
            (int(p["ckpt_pc"]), p["ckpt_acc"]), p["pending"] if p["loaded"] else None,
            bool(p["latch"]), bool(p["halted"]), int(p["flips"]), int(p["resets"]))

    def cycle_seed(self, cycle: int) -> int:
        return (self.sc.seed << 32) | cycle

    def physical(self, p, params, t1, cycle: int = 0):
        pl = self.from_state(p, params)
        if pl.halted:
            return PhysicalState(t1, p.quantities)
        signal = Signal.RESET.value if p["reset"] else Signal.CONTINUE.value
        force = self.force_bit if cycle == self.force_cycle else None
        nxt, _ = processor_step(pl, signal, self.cycle_seed(cycle), force)
        return self.to_state(nxt, t1).merged(p.restricted(("reset",)), time=t1)

    def abstract(self, m, params):
        """Fault-free machine: commits come from storage itself, never from the bus."""
        pc, acc = int(m["pc"]), m["acc"].value
        latch, loaded, halted = m["latch"], m["loaded"], m["halted"]
        if halted:
            pass
        elif latch:
            latch = False
        else:
            if loaded and not m["u"]:
                acc = accumulate(acc, self.storage[pc])
                pc += 1
            if pc == len(self.storage):
                halted, loaded = True, False
            else:
                latch, loaded = True, True
        return AbstractState({"pc": float(pc), "acc": BitWord(ACC_WIDTH, acc), "latch": latch,
                              "loaded": loaded, "halted": halted, "u": m["u"]})


PLANT_LOOPS = {"thermal": ThermalLoop, "engine": EngineLoop, "processor": ProcessorLoop}


# -- controllers ----------------------------------------------------------------

class ControllerLoop:
    """Physical controller model H_c against its abstract computation C_c."""
    input_name: str
    output_name: str
    junction_name: str
    rep: RepresentationPair
    out_rep: Optional[RepresentationPair] = None
    metric: Metric

    def __init__(self, sc: ControlScenario, plant: PlantLoop):
        self.sc, self.plant, self.dt = sc, plant, sc.dt
        self.c = sc.controller
        self.input_unit = plant.output_unit
        self.input_rep = RepresentationPair(
            "controller", (self._input_map(),))
        self.output_rep = RepresentationPair("controller", (self._output_map(),))

    def _input_map(self):
        return identity_map(self.input_name, self.input_unit, "y")

    def _output_map(self):
        return identity_map(self.output_name, DIM, "s")

    def sense(self, plant_state: PhysicalState) -> PhysicalState:
        """Sensor/transducer: the plant output copied into the controller's input element."""
        q = plant_state.quantities[self.plant.output_name]
        return PhysicalState(plant_state.time, {self.input_name: q})

    def decode(self, m: AbstractState) -> AbstractState:
        return AbstractState({"u": clamp(float(m["s"]), 0.0, 1.0)})

    def actuate(self, ctl_state: PhysicalState) -> PhysicalState:
        return self.plant.input_state(clamp(ctl_state[self.output_name], 0.0, 1.0), ctl_state.time)

    def default_s0(self):
        return 0.0

    def signal_value(self, s0) -> AbstractState:
        return AbstractState({"s": float(s0)})


class BangBangLoop(ControllerLoop):
    """A digital thermostat: H_c is literally instantiate . C_c . represent."""
    input_name, output_name, junction_name = "T_in", "u", "e"

    def __init__(self, sc, plant):
        super().__init__(sc, plant)
        self.rep = RepresentationPair("thermostat", (
            identity_map("T_in", Unit.KELVIN, "y"), identity_map("e", Unit.KELVIN),
            boolean_map("u", "s")))
        self.metric = Metric.weighted(y=1.0, e=1.0, s=1.0)

    def _output_map(self):
        return boolean_map("u", "s")

    def initial(self, s0):
        state = PhysicalState.of(0.0, T_in=(0.0, Unit.KELVIN), e=(0.0, Unit.KELVIN), u=(_flag(s0), DIM))
        return state, None

    def abstract(self, m):
        T, T_re, h = m["y"], self.c["T_re"], self.c["h"]
        s = True if T < T_re - h else False if T > T_re + h else m["s"]
        return AbstractState({"y": T, "e": T_re - T, "s": s})

    def physical(self, p, obj, t1):
        return instantiate(self.rep, self.abstract(represent(self.rep, p)), t1), obj

    def decode(self, m):
        return AbstractState({"u": 1.0 if m["s"] else 0.0})

    def actuate(self, ctl_state):
        return self.plant.input_state(_flag(ctl_state["u"]), ctl_state.time)

    def default_s0(self):
        return False

    def signal_value(self, s0):
        return AbstractState({"s": bool(s0)})


class BimetalLoop(BangBangLoop):
    """Bimetallic coil whose contact closes the heater circuit."""
    input_name, output_name, junction_name = "T_in", "contact", "gap"

    def __init__(self, sc, plant):
        ControllerLoop.__init__(self, sc, plant)
        c = self.c
        T_on = c["T_re"] - c["h"]
        self.coil = BimetalCoil(
            c["T_ref_cal"], c["x_at_cal"], c["alpha"],
            matched_contact_position(T_on, c["T_ref_cal"], c["x_at_cal"], c["alpha"]) + c["x_re_offset"],
            release_gap=2.0 * c["h"] * c["alpha"])
        self.rep = RepresentationPair("thermostat", (
            identity_map("T_in", Unit.KELVIN, "y"), boolean_map("contact", "s")))
        self.metric = Metric.weighted(y=1.0, s=1.0)

    def _output_map(self):
        return boolean_map("contact", "s")

    def initial(self, s0):
        coil = replace(self.coil, latched=bool(s0))
        x = max(coil.free_position(self.sc.plant["T0"]), coil.x_re)
        state = PhysicalState.of(0.0, T_in=(0.0, Unit.KELVIN), x=(x, Unit.METRE),
                                 gap=(x - coil.x_re, Unit.METRE), contact=(_flag(s0), DIM))
        return state, coil

    def abstract(self, m):
        # the design decision the coil was built to realise
        T, T_re, h = m["y"], self.c["T_re"], self.c["h"]
        s = True if T < T_re - h else False if T > T_re + h else m["s"]
        return AbstractState({"y": T, "s": s})

    def physical(self, p, obj, t1):
        coil = replace(self.coil, latched=bool(p["contact"]))
        contact, x, coil = bimetal_decide(coil, p["T_in"])
        return p.updated(time=t1, x=x, gap=x - coil.x_re, contact=_flag(contact)), coil

    def actuate(self, ctl_state):
        return self.plant.input_state(_flag(ctl_state["contact"]), ctl_state.time)


class ProportionalLoop(ControllerLoop):
    input_name, output_name = "y_in", "s"

    def __init__(self, sc, plant):
        super().__init__(sc, plant)
        c = self.c
        self.ctl = ProportionalController(c["gain"], c["out_min"], c["out_max"])
        self.parallel = sc.topology is Topology.PARALLEL
        self.junction_name = "c" if self.parallel else "e"
        self.rep = RepresentationPair("proportional", (
            identity_map("y_in", self.input_unit, "y"), identity_map(self.junction_name, DIM),
            identity_map("s", DIM)))
        self.metric = Metric.weighted(y=1.0, **{self.junction_name: 1.0}, s=1.0)

    def initial(self, s0):
        state = PhysicalState.of(0.0, y_in=(0.0, self.input_unit), s=(float(s0), DIM),
                                 **{self.junction_name: (0.0, DIM)})
        return state, self.ctl

    def _law(self, y: float):
        r = self.c["r"]
        if self.parallel:
            c = self.c["gain"] * y
            return c, clamp(summing_junction(Topology.PARALLEL, r, c), self.c["out_min"], self.c["out_max"])
        e = summing_junction(Topology.SERIAL, r, y)
        return e, clamp(self.c["gain"] * e, self.c["out_min"], self.c["out_max"])

    def abstract(self, m):
        j, s = self._law(m["y"])
        return AbstractState({"y": m["y"], self.junction_name: j, "s": s})

    def physical(self, p, obj, t1):
        y = p["y_in"]
        if self.parallel:
            c = obj.gain * y
            s = clamp(self.c["r"] - c, obj.out_min, obj.out_max)
            return p.updated(time=t1, c=c, s=s), obj
        e = self.c["r"] - y
        return p.updated(time=t1, e=e, s=proportional_decide(obj, e)), obj

    def default_s0(self):
        if self.sc.plant.kind == "engine":
            return self.sc.plant["valve0"]
        return clamp(0.0, self.c["out_min"], self.c["out_max"])


class GovernorLoop(ControllerLoop):
    """Flyball arms driven by the shaft; the collar moves the valve."""
    input_name, output_name, junction_name = "omega_in", "valve_cmd", "dx"

    def __init__(self, sc, plant):
        super().__init__(sc, plant)
        c = self.c
        self.ctl = GovernorController(c["theta0"], c["theta_dot0"], c["l1"], c["beta"], c["c0"],
                                      c["c1"], c["x_re"], c["valve_gain"], c["v0"], c["g"])
        self.rep = RepresentationPair("governor", (
            identity_map("omega_in", Unit.RADIAN_PER_SECOND, "y"), identity_map("theta", Unit.RADIAN),
            identity_map("theta_dot", Unit.RADIAN_PER_SECOND), identity_map("valve_cmd", DIM, "s")))
        self.metric = Metric.weighted(theta=1.0, theta_dot=1.0, s=1.0)

    def initial(self, s0):
        g = self.ctl
        x = collar_height(g, g.theta)
        state = PhysicalState.of(
            0.0, omega_in=(0.0, Unit.RADIAN_PER_SECOND), theta=(g.theta, Unit.RADIAN),
            theta_dot=(g.theta_dot, Unit.RADIAN_PER_SECOND), x=(x, Unit.METRE),
            dx=(g.x_re - x, Unit.METRE), valve_cmd=(float(s0), DIM))
        return state, g

    def abstract(self, m):
        th, thd = governor_abstract_step(m["theta"], m["theta_dot"], m["y"], self.dt, self.ctl)
        return AbstractState({"y": m["y"], "theta": th, "theta_dot": thd,
                              "s": valve_command(self.ctl, collar_height(self.ctl, th))})

    def physical(self, p, obj, t1):
        g = replace(obj, theta=p["theta"], theta_dot=p["theta_dot"])
        valve, g = governor_step(g, p["omega_in"], self.dt, self.sc.integrator)
        x = g.collar
        return p.updated(time=t1, theta=g.theta, theta_dot=g.theta_dot, x=x, dx=g.x_re - x,
                         valve_cmd=valve), g

    def default_s0(self):
        return self.c["v0"]


class HumanLoop(ControllerLoop):
    """An operator turning a detented heater knob.

    Only the error that comes due this cycle (`head`) is represented; the rest
    of the operator's short-term memory stays inside the physical model.
    """
    input_name, output_name, junction_name = "T_in", "phi", "e"

    def __init__(self, sc, plant):
        super().__init__(sc, plant)
        c = self.c
        self.ctl = HumanPolicy.at_angle(c["T_re"], c["k_h"], c["quantum"], c["delay"], c["phi_max"], c["phi0"])
        K = Unit.KELVIN
        self.rep = RepresentationPair("operator", (
            identity_map("T_in", K, "y"), identity_map("head", K), boolean_map("primed", "primed"),
            identity_map("phi", Unit.RADIAN, "s")))
        self.out_rep = RepresentationPair("operator", (
            identity_map("T_in", K, "y"), identity_map("e", K), identity_map("phi", Unit.RADIAN, "s")))
        self.metric = Metric.weighted(y=1.0, e=1.0, s=1.0)

    def _output_map(self):
        return identity_map("phi", Unit.RADIAN, "s")

    def _memory(self, h: HumanPolicy) -> dict:
        primed = h.delay == 0 or len(h.queue) == h.delay
        head = h.queue[0] if h.delay > 0 and primed else 0.0
        return {"head": head, "primed": _flag(primed)}

    def initial(self, s0):
        h = self.ctl
        state = PhysicalState.of(0.0, T_in=(0.0, Unit.KELVIN), e=(0.0, Unit.KELVIN),
                                 detent=(float(h.detent), DIM), phi=(h.phi, Unit.RADIAN),
                                 head=(0.0, Unit.KELVIN), primed=(_flag(h.delay == 0), DIM))
        return state, h

    def abstract(self, m):
        c = self.c
        e = c["T_re"] - m["y"]
        phi = m["s"]
        if m["primed"]:
            act = e if c["delay"] == 0 else m["head"]
            q = c["quantum"]
            phi = min(max(phi + q * round_half_away(c["k_h"] * act / q), 0.0), c["phi_max"])
        return AbstractState({"y": m["y"], "e": e, "s": phi})

    def physical(self, p, obj, t1):
        h = replace(obj, detent=int(p["detent"]))
        phi, h = human_policy_decide(h, p["T_in"])
        return p.updated(time=t1, e=h.T_re - p["T_in"], detent=float(h.detent), phi=phi,
                         **self._memory(h)), h

    def decode(self, m):
        return AbstractState({"u": m["s"] / self.c["phi_max"]})

    def actuate(self, ctl_state):
        return self.plant.input_state(ctl_state["phi"] / self.c["phi_max"], ctl_state.time)

    def default_s0(self):
        return self.ctl.phi


class ParityLoop(ControllerLoop):
    """Parity tree on the loaded word driving the reset line."""
    input_name, output_name, junction_name = "w_in", "reset", "parity"

    def __init__(self, sc, plant):
        super().__init__(sc, plant)
        self.rep = RepresentationPair("parity", (
            bitword_map("w_in", "y", WORD_WIDTH), boolean_map("parity", "p"), boolean_map("reset", "s")))
        self.metric = Metric.weighted(y=1.0, p=1.0, s=1.0)

    def _input_map(self):
        return bitword_map("w_in", "y", WORD_WIDTH)

    def _output_map(self):
        return boolean_map("reset", "s")

    def initial(self, s0):
        state = PhysicalState(0.0, {"w_in": Quantity(0, Unit.BITS, WORD_WIDTH),
                                    "parity": Quantity(0.0, DIM),
                                    "reset": Quantity(_flag(s0 == Signal.RESET.value), DIM)})
        return state, None

    def abstract(self, m):
        negative = m["y"].popcount() % 2 == 1
        return AbstractState({"y": m["y"], "p": negative, "s": not negative})

    def physical(self, p, obj, t1):
        par = xor_parity(BitWord(WORD_WIDTH, p["w_in"]))
        return p.updated(time=t1, parity=float(par), reset=float(1 - par)), obj

    def decode(self, m):
        return AbstractState({"u": m["s"]})

    def actuate(self, ctl_state):
        return self.plant.input_state(bool(ctl_state["reset"]), ctl_state.time)

    def default_s0(self):
        return Signal.CONTINUE.value

    def signal_value(self, s0):
        return AbstractState({"s": s0 == Signal.RESET.value})


CONTROLLER_LOOPS = {
    "bangbang": BangBangLoop, "bimetal": BimetalLoop, "proportional": ProportionalLoop,
    "governor": GovernorLoop, "human": HumanLoop, "parity": ParityLoop,
}


_Y_METRIC = Metric.weighted(y=1.0)
_U_METRIC = Metric.weighted(u=1.0)


def _identity(m: AbstractState) -> AbstractState:
    return m


@dataclass
class Loop:
    """Both halves of one scenario's feedback loop."""
    sc: ControlScenario
    plant: PlantLoop
    controller: ControllerLoop

    @classmethod
    def of(cls, sc: ControlScenario) -> "Loop":
        plant = PLANT_LOOPS[sc.plant.kind](sc)
        return cls(sc, plant, CONTROLLER_LOOPS[sc.controller.kind](sc, plant))

    def start(self):
        """World at t0: plant state with the decoded initial signal, controller state and model."""
        s0 = self.sc.s0 if self.sc.s0 is not None else self.controller.default_s0()
        ctl_state, ctl_obj = self.controller.initial(s0)
        u0 = self.controller.decode(self.controller.signal_value(s0))["u"]
        plant_state = self.plant.initial().merged(self.plant.input_state(u0, 0.0))
        return plant_state, ctl_state, ctl_obj

    def cube(self, cycle: int, params: dict, plant_state: PhysicalState,
             ctl_state: PhysicalState, ctl_obj):
        """The compute cube of one cycle, plus the controller model it leaves behind."""
        eps, pl, ct = self.sc.epsilon, self.plant, self.controller
        t1 = (cycle + 1) * self.sc.dt

        sensed = ct.sense(plant_state)
        enc = CommutationSquare(plant_state, pl.output_rep, _identity,
                                _memo(ct.sense, plant_state, sensed), _Y_METRIC, eps.encode,
                                output_rep=ct.input_rep, name="encode")

        c_in = ctl_state.merged(sensed)
        c_out, obj_out = ct.physical(c_in, ctl_obj, t1)
        ctl = CommutationSquare(c_in, ct.rep, ct.abstract,
                                _memo(lambda p: ct.physical(p, ctl_obj, t1)[0], c_in, c_out),
                                ct.metric, eps.controller, output_rep=ct.out_rep, name="controller")

        u_next = ct.actuate(c_out)
        dec = CommutationSquare(c_out, ct.output_rep, ct.decode, _memo(ct.actuate, c_out, u_next),
                                _U_METRIC, eps.decode, output_rep=pl.input_rep, name="decode")

        if isinstance(pl, ProcessorLoop):
            evolve = lambda p: pl.physical(p, params, t1, cycle)
        else:
            evolve = lambda p: pl.physical(p, params, t1)
        p_out = evolve(plant_state)
        plant = CommutationSquare(plant_state, pl.rep, lambda m: pl.abstract(m, params),
                                  _memo(evolve, plant_state, p_out), pl.metric, eps.plant, name="plant")
        return ComputeCube(enc, ctl, dec, plant), obj_out


__all__ = ["Loop", "PlantLoop", "ControllerLoop", "PLANT_LOOPS", "CONTROLLER_LOOPS", "ProcessorLoop"]
