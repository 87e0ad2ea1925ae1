"""Scenario-driven command line front end.

A scenario is a single YAML (or JSON) file describing the mechanism
sequence and, depending on the subcommand, the composition theorem,
neighborhood mode, membership constraint, hypothesis pair, and oracle
settings:

    mechanisms:                      # required; one entry per iteration
      - {epsilon: 0.1, delta: 1.0e-6}
    theorem: simple                  # or {advanced: {delta_slack: 1.0e-5}}
    mode: unbounded                  # or bounded
    constraint: {max_ones: 3}        # or at_most_one, or {patterns: [...]}
    hypotheses: {p0: zero, p1: uniform_nonzero}   # presets or explicit maps
    subsample_rate: 0.5
    oracle: {rr_q: 0.25, trials: 100000, seed: 0}

Bit strings are ASCII '0'/'1' with the leftmost character naming the
first iteration. Explicit hypotheses map bit strings to weights; the
presets are "zero" (point mass on the all-absent vector),
"uniform_nonzero" and "uniform_all".

Exit codes: 0 success, 1 bad scenario file, 2 computation error,
3 verification found the claim unsound (verify only). The machine
report goes to --out (default stdout) with round-trip-exact numbers;
the human summary goes to stderr unless --quiet is given.
"""

import argparse
import sys
from dataclasses import dataclass

import yaml

from . import constraints as con
from . import hypothesis_dp as hdp
from . import oracle as orc
from . import subsampling as sub
from .composition import Advanced, CompositionTheorem, Simple, compose
from .core import BitVector, Hypothesis, MechanismSequence, PrivacyParams
from .errors import (
    AccountingError,
    ScenarioError,
    ScenarioParseError,
    ScenarioValidationError,
)

EXIT_OK = 0
EXIT_BAD_SCENARIO = 1
EXIT_COMPUTATION = 2
EXIT_UNSOUND = 3

HYPOTHESIS_PRESETS = ("zero", "uniform_nonzero", "uniform_all")


@dataclass(frozen=True)
class Scenario:
    """A fully validated in-memory scenario."""

    mechanisms: MechanismSequence
    theorem: CompositionTheorem
    mode: con.NeighborhoodMode
    constraint: con.MembershipConstraint | None
    p0: Hypothesis
    p1: Hypothesis
    p0_spec: "str | dict"
    p1_spec: "str | dict"
    subsample_rate: float
    rr_q: float
    trials: int
    seed: int

    @property
    def k(self) -> int:
        return self.mechanisms.k


def _fail(field: str, message: str) -> ScenarioValidationError:
    return ScenarioValidationError(f"{field}: {message}")


def _parse_mechanisms(raw) -> MechanismSequence:
    if not isinstance(raw, list) or not raw:
        raise _fail("mechanisms", "expected a non-empty list of {epsilon, delta} entries")
    guarantees = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise _fail(f"mechanisms[{i}]", "expected a mapping with epsilon/delta")
        eps = entry.get("epsilon", 0.0)
        delta = entry.get("delta", 0.0)
        unknown = set(entry) - {"epsilon", "delta"}
        if unknown:
            raise _fail(f"mechanisms[{i}]", f"unknown keys {sorted(unknown)}")
        try:
            guarantees.append(PrivacyParams(float(eps), float(delta)))
        except (TypeError, ValueError) as exc:
            raise _fail(f"mechanisms[{i}]", str(exc)) from exc
    return MechanismSequence(tuple(guarantees))


def _parse_theorem(raw) -> CompositionTheorem:
    if raw is None or raw == "simple":
        return Simple()
    if isinstance(raw, dict) and set(raw) == {"advanced"}:
        body = raw["advanced"]
        if not isinstance(body, dict) or "delta_slack" not in body:
            raise _fail("theorem.advanced", "expected {delta_slack: <float>}")
        try:
            # InvalidSlackError is a ValueError, so a bad range lands here too.
            return Advanced(float(body["delta_slack"]))
        except (TypeError, ValueError) as exc:
            raise _fail("theorem.advanced.delta_slack", str(exc)) from exc
    raise _fail("theorem", f"expected 'simple' or {{advanced: ...}}, got {raw!r}")


def _parse_mode(raw) -> con.NeighborhoodMode:
    if raw is None:
        return con.NeighborhoodMode.UNBOUNDED
    try:
        return con.NeighborhoodMode(raw)
    except ValueError as exc:
        raise _fail("mode", f"expected 'unbounded' or 'bounded', got {raw!r}") from exc


def _parse_constraint(raw, k: int) -> con.MembershipConstraint | None:
    if raw is None:
        return None
    if raw == "at_most_one":
        return con.AT_MOST_ONE
    if isinstance(raw, dict) and set(raw) == {"max_ones"}:
        try:
            return con.MaxOnes(int(raw["max_ones"]))
        except (TypeError, ValueError) as exc:
            raise _fail("constraint.max_ones", str(exc)) from exc
    if isinstance(raw, dict) and set(raw) == {"patterns"}:
        patterns = raw["patterns"]
        if not isinstance(patterns, list) or not patterns:
            raise _fail("constraint.patterns", "expected a non-empty list of bit strings")
        vectors = [
            _parse_bitvector(p, k, f"constraint.patterns[{i}]")
            for i, p in enumerate(patterns)
        ]
        return con.PatternSet.of(vectors)
    raise _fail("constraint", f"unrecognized constraint {raw!r}")


def _parse_bitvector(raw, k: int, field: str) -> BitVector:
    if not isinstance(raw, str):
        raise _fail(field, f"expected a bit string, got {raw!r}")
    try:
        vec = BitVector.from_string(raw)
    except ValueError as exc:
        raise _fail(field, str(exc)) from exc
    if vec.k != k:
        raise _fail(field, f"bit string has length {vec.k}, expected {k}")
    return vec


def _parse_hypothesis(raw, k: int, field: str) -> tuple[Hypothesis, "str | dict"]:
    """Parse a hypothesis spec; returns the hypothesis and an echo for reports."""
    if raw is None or raw == "zero":
        try:
            return Hypothesis.point_mass(BitVector.zeros(k)), "zero"
        except AccountingError as exc:
            raise _fail(field, str(exc)) from exc
    if raw == "uniform_nonzero":
        try:
            return Hypothesis.uniform_nonzero(k), "uniform_nonzero"
        except AccountingError as exc:
            raise _fail(field, str(exc)) from exc
    if raw == "uniform_all":
        try:
            return Hypothesis.uniform_all(k), "uniform_all"
        except AccountingError as exc:
            raise _fail(field, str(exc)) from exc
    if isinstance(raw, str):
        raise _fail(field, f"unknown preset {raw!r}; options: {', '.join(HYPOTHESIS_PRESETS)}")
    if isinstance(raw, dict):
        try:
            atoms = {
                _parse_bitvector(s, k, f"{field}[{s!r}]"): float(w)
                for s, w in raw.items()
            }
            hypothesis = Hypothesis(atoms)
        except (AccountingError, TypeError) as exc:
            raise _fail(field, str(exc)) from exc
        return hypothesis, {str(v): w for v, w in hypothesis.atoms}
    raise _fail(field, f"expected a preset name or a {{bitstring: weight}} map, got {raw!r}")


def load_scenario(path: str, seed_override: int | None = None) -> Scenario:
    """Read and validate a scenario file.

    Raises:
        ScenarioParseError: unreadable or syntactically invalid file.
        ScenarioValidationError: well-formed file violating an invariant.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
    except OSError as exc:
        raise ScenarioParseError(f"cannot read scenario file: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ScenarioParseError(f"cannot parse scenario file: {exc}") from exc
    if not isinstance(raw, dict):
        raise ScenarioParseError("scenario must be a mapping at the top level")

    known = {
        "mechanisms", "theorem", "mode", "constraint", "hypotheses",
        "subsample_rate", "oracle",
    }
    unknown = set(raw) - known
    if unknown:
        raise ScenarioValidationError(f"unknown top-level keys {sorted(unknown)}")

    mechanisms = _parse_mechanisms(raw.get("mechanisms"))
    k = mechanisms.k
    theorem = _parse_theorem(raw.get("theorem"))
    mode = _parse_mode(raw.get("mode"))
    constraint = _parse_constraint(raw.get("constraint"), k)

    hyp = raw.get("hypotheses") or {}
    if not isinstance(hyp, dict) or set(hyp) - {"p0", "p1"}:
        raise _fail("hypotheses", "expected a mapping with keys p0 and p1")
    p0, p0_spec = _parse_hypothesis(hyp.get("p0", "zero"), k, "hypotheses.p0")
    p1, p1_spec = _parse_hypothesis(hyp.get("p1", "uniform_nonzero"), k, "hypotheses.p1")

    rate = raw.get("subsample_rate", 0.5)
    try:
        rate = float(rate)
    except (TypeError, ValueError) as exc:
        raise _fail("subsample_rate", str(exc)) from exc
    if not 0.0 <= rate <= 1.0:
        raise _fail("subsample_rate", f"must be in [0, 1], got {rate}")

    oracle_raw = raw.get("oracle") or {}
    if not isinstance(oracle_raw, dict) or set(oracle_raw) - {"rr_q", "trials", "seed"}:
        raise _fail("oracle", "expected a mapping with keys rr_q, trials, seed")
    try:
        rr_q = float(oracle_raw.get("rr_q", 0.25))
        trials = int(oracle_raw.get("trials", 100_000))
        seed = int(oracle_raw.get("seed", 0))
    except (TypeError, ValueError) as exc:
        raise _fail("oracle", str(exc)) from exc
    if not 0.0 < rr_q < 0.5:
        raise _fail("oracle.rr_q", f"must be in (0, 0.5), got {rr_q}")
    if trials < 1:
        raise _fail("oracle.trials", f"must be >= 1, got {trials}")
    if seed_override is not None:
        seed = seed_override
    if not 0 <= seed < 2**63:
        raise _fail("oracle.seed", f"must be in [0, 2^63), got {seed}")

    return Scenario(
        mechanisms=mechanisms,
        theorem=theorem,
        mode=mode,
        constraint=constraint,
        p0=p0,
        p1=p1,
        p0_spec=p0_spec,
        p1_spec=p1_spec,
        subsample_rate=rate,
        rr_q=rr_q,
        trials=trials,
        seed=seed,
    )


# ---------------------------------------------------------------- reporting


def _float_representer(dumper, value):
    if value != value or value in (float("inf"), float("-inf")):
        return yaml.SafeDumper.represent_float(dumper, value)
    # repr is round-trip exact; add the decimal point the YAML implicit
    # float resolver insists on (repr(1e-06) == '1e-06').
    text = repr(value)
    if "e" in text and "." not in text:
        mantissa, _, exponent = text.partition("e")
        text = f"{mantissa}.0e{exponent}"
    return dumper.represent_scalar("tag:yaml.org,2002:float", text)


class _ReportDumper(yaml.SafeDumper):
    pass


_ReportDumper.add_representer(float, _float_representer)


def _params_dict(g: PrivacyParams) -> dict:
    return {"epsilon": g.epsilon, "delta": g.delta}


def _theorem_name(theorem: CompositionTheorem) -> str:
    if isinstance(theorem, Advanced):
        return f"advanced(delta_slack={theorem.delta_slack!r})"
    return "simple"


def _scenario_echo(s: Scenario) -> dict:
    echo = {
        "mechanisms": [_params_dict(g) for g in s.mechanisms],
        "theorem": _theorem_name(s.theorem),
        "mode": s.mode.value,
    }
    if s.constraint is not None:
        if isinstance(s.constraint, con.MaxOnes):
            echo["constraint"] = {"max_ones": s.constraint.m}
        else:
            echo["constraint"] = {
                "patterns": sorted(str(p) for p in s.constraint.patterns)
            }
    echo["hypotheses"] = {"p0": s.p0_spec, "p1": s.p1_spec}
    echo["subsample_rate"] = s.subsample_rate
    echo["oracle"] = {"rr_q": s.rr_q, "trials": s.trials, "seed": s.seed}
    return echo


def _emit(report: dict, out_path: str | None, human_lines: list[str], quiet: bool) -> None:
    text = yaml.dump(report, Dumper=_ReportDumper, sort_keys=False, default_flow_style=False)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not quiet:
        for line in human_lines:
            print(line, file=sys.stderr)


# ---------------------------------------------------------------- commands


def _cmd_compose(s: Scenario) -> tuple[dict, list[str], int]:
    result = compose(s.mechanisms, s.theorem)
    report = {
        "command": "compose",
        "scenario": _scenario_echo(s),
        "method": _theorem_name(s.theorem),
        "result": _params_dict(result),
    }
    human = [
        f"classic composition of k={s.k} mechanisms via {_theorem_name(s.theorem)}:",
        f"  epsilon = {result.epsilon:.6g}   delta = {result.delta:.6g}",
    ]
    return report, human, EXIT_OK


def _cmd_hdp(s: Scenario) -> tuple[dict, list[str], int]:
    result = hdp.hdp_guarantee(s.p0, s.p1, s.mechanisms, s.theorem)
    report = {
        "command": "hdp",
        "scenario": _scenario_echo(s),
        "method": f"hypothesis pair refinement + {_theorem_name(s.theorem)}",
        "result": _params_dict(result),
    }
    human = [
        f"hypothesis-pair guarantee over k={s.k} mechanisms "
        f"({len(s.p0)} vs {len(s.p1)} atoms):",
        f"  epsilon = {result.epsilon:.6g}   delta = {result.delta:.6g}",
    ]
    return report, human, EXIT_OK


def _cmd_constrain(s: Scenario) -> tuple[dict, list[str], int]:
    if s.constraint is None:
        raise ScenarioValidationError("constraint: required for the constrain command")
    bound = con.constrained_bound(s.mechanisms, s.constraint, s.mode, s.theorem)
    report = {
        "command": "constrain",
        "scenario": _scenario_echo(s),
        "method": f"constraint-restricted worst case + {_theorem_name(s.theorem)}",
        "result": _params_dict(bound),
    }
    human = [
        f"constraint-derived bound ({s.mode.value}):",
        f"  epsilon = {bound.epsilon:.6g}   delta = {bound.delta:.6g}",
    ]
    if isinstance(s.constraint, con.MaxOnes):
        # Parallel composition covers pure epsilon-DP only, so the
        # comparison is made on the epsilon parts with deltas zeroed.
        eps_only = [PrivacyParams(g.epsilon, 0.0) for g in s.mechanisms]
        parallel = con.parallel_bound(eps_only, s.constraint.m, s.mode)
        report["parallel_comparison"] = {
            "epsilon": parallel.epsilon,
            "note": "parallel composition baseline on the epsilon parts (delta ignored)",
        }
        human.append(
            f"  parallel composition baseline: epsilon = {parallel.epsilon:.6g} (delta ignored)"
        )
    return report, human, EXIT_OK


def _cmd_subsample(s: Scenario) -> tuple[dict, list[str], int]:
    results = {
        "block_bound": sub.uniform_prior_bound(s.mechanisms, s.theorem),
        "split_bound": sub.uniform_prior_split_bound(s.mechanisms, s.theorem),
    }
    report = {
        "command": "subsample",
        "scenario": _scenario_echo(s),
        "method": f"uniform-prior subsampling bounds + {_theorem_name(s.theorem)}",
        "results": {name: _params_dict(g) for name, g in results.items()},
    }
    human = [f"uniform-prior bounds for k={s.k} mechanisms:"]
    for name, g in results.items():
        human.append(f"  {name:12s} epsilon = {g.epsilon:.6g}   delta = {g.delta:.6g}")
    if s.mechanisms.is_homogeneous():
        g0 = s.mechanisms[0]
        closed = sub.uniform_prior_closed_form(g0.epsilon, g0.delta, s.k)
        report["results"]["closed_form"] = _params_dict(closed)
        human.append(
            f"  closed_form  epsilon = {closed.epsilon:.6g}   delta = {closed.delta:.6g}"
        )
    amplified = [sub.amplify(g, s.subsample_rate) for g in s.mechanisms]
    report["amplified_mechanisms"] = {
        "rate": s.subsample_rate,
        "guarantees": [_params_dict(g) for g in amplified],
    }
    return report, human, EXIT_OK


def _rr_mechs(s: Scenario) -> list[orc.DiscreteMechanism]:
    return [orc.randomized_response(s.rr_q) for _ in range(s.k)]


def _cmd_verify(s: Scenario) -> tuple[dict, list[str], int]:
    claimed = hdp.hdp_guarantee(s.p0, s.p1, s.mechanisms, s.theorem)
    outcome = orc.verify_hdp(_rr_mechs(s), s.p0, s.p1, claimed)
    report = {
        "command": "verify",
        "scenario": _scenario_echo(s),
        "method": f"exact enumeration against randomized response q={s.rr_q!r}",
        "claimed": _params_dict(claimed),
        "delta_needed_fwd": outcome.delta_needed_fwd,
        "delta_needed_rev": outcome.delta_needed_rev,
        "sound": outcome.sound,
    }
    verdict = "SOUND" if outcome.sound else "UNSOUND"
    human = [
        f"claimed (epsilon={claimed.epsilon:.6g}, delta={claimed.delta:.6g}) "
        f"for RR({s.rr_q}) x {s.k}: {verdict}",
        f"  delta needed: fwd = {outcome.delta_needed_fwd:.6g}, "
        f"rev = {outcome.delta_needed_rev:.6g}",
    ]
    return report, human, EXIT_OK if outcome.sound else EXIT_UNSOUND


def _cmd_simulate(s: Scenario) -> tuple[dict, list[str], int]:
    mechs = _rr_mechs(s)
    vectors = sorted(set(s.p0.support()) | set(s.p1.support()), key=lambda v: v.word)
    rows = []
    human = [f"Monte-Carlo check, {s.trials} trials per vector, seed {s.seed}:"]
    for idx, vec in enumerate(vectors):
        counts = orc.simulate_experiment(mechs, vec, s.trials, s.seed + idx)
        exact = orc.view_distribution(mechs, vec).probs
        worst_dev = 0.0
        worst_bound = 0.0
        within = True
        for view, p in exact.items():
            freq = counts[view] / s.trials
            sigma = (p * (1.0 - p) / s.trials) ** 0.5
            dev = abs(freq - p)
            if dev > worst_dev:
                worst_dev, worst_bound = dev, 4.0 * sigma
            if dev > 4.0 * sigma:
                within = False
        rows.append({
            "vector": str(vec),
            "trials": s.trials,
            "max_abs_deviation": worst_dev,
            "four_sigma_at_max": worst_bound,
            "within_four_sigma": within,
        })
        human.append(
            f"  b={vec}: max |freq - prob| = {worst_dev:.3e} "
            f"({'ok' if within else 'OUTSIDE'} 4-sigma)"
        )
    report = {
        "command": "simulate",
        "scenario": _scenario_echo(s),
        "method": f"Philox Monte-Carlo of randomized response q={s.rr_q!r}",
        "results": rows,
    }
    return report, human, EXIT_OK


COMMANDS = {
    "compose": _cmd_compose,
    "hdp": _cmd_hdp,
    "constrain": _cmd_constrain,
    "subsample": _cmd_subsample,
    "verify": _cmd_verify,
    "simulate": _cmd_simulate,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypodp",
        description="Privacy accounting under composite membership hypotheses.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        p = subparsers.add_parser(name, help=fn.__doc__)
        p.add_argument("--scenario", required=True, help="path to the scenario file")
        p.add_argument("--out", default=None, help="machine report path (default stdout)")
        p.add_argument("--seed", type=int, default=None, help="override the scenario seed")
        p.add_argument("--quiet", action="store_true", help="suppress the human summary")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        scenario = load_scenario(args.scenario, seed_override=args.seed)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_SCENARIO
    try:
        report, human, code = COMMANDS[args.command](scenario)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_SCENARIO
    except ValueError as exc:  # AccountingError and plain validation errors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    _emit(report, args.out, human, args.quiet)
    return code


if __name__ == "__main__":
    sys.exit(main())
