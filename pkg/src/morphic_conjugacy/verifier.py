"""Reproducible checks for the 5-letter conjugacy-avoidance construction.

Everything downstream of the table-identity checks uses f = F^3 and
g = G o F^2 as *computed* from the supplied F and G, so a perturbed table
shows up as failing checks rather than being silently masked.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from typing import Callable

from . import presets
from .conjugacy import class_of, complete_classes_up_to
from .factors import (
    CODED_LEVEL,
    UNDERLYING_LEVEL,
    MembershipOracle,
    ResourceError,
    closure_factor_set,
    coded_factor_set,
    coding_span,
    render_word,
)
from .morphism import Morphism, compose, iterate, power
from .words import is_rotation_of

log = logging.getLogger(__name__)

LEMMA_IDS = (3, 4, 5, 6)

# Underlying words whose absence closes each lemma's argument.
FORBIDDEN = {3: "232", 4: "32403", 5: "403230124", 6: "030120"}

F4_2 = "0120301240324"
F5_2 = "012030124012032301240323"
F4_2_CONJUGATE = "4012030124032"
F5_2_CONJUGATE = "301203012401203230124032"

# Complete classes of index <= 1, as words: F(2), F^2(2), F(4), F^2(4), f(4), f(0).
C1_WORDS = ("03", "0124", "23", "0324", "01240323", "01203")

# Largest word length printed in reports before switching to a digest.
REPORT_WORD_LIMIT = 128


@dataclass
class Config:
    F: Morphism = presets.F
    G: Morphism = presets.G
    expected_f: dict = field(default_factory=lambda: dict(presets.f_IMAGES))
    expected_g: dict = field(default_factory=lambda: dict(presets.g_IMAGES))
    max_d: int = 5
    min_d: int = 0
    theorem_max_len: int = 100
    lemma2_enum_len: int = 40
    index_margin: int = 8
    base_bound: int = 200
    max_depth: int = 64


@dataclass
class CheckResult:
    name: str
    params: dict
    status: str
    witness: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self, timing: bool = True) -> dict:
        d = {"check": self.name, "params": self.params, "status": self.status, "witness": self.witness}
        if self.reason:
            d["reason"] = self.reason
        if timing:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == "fail"]

    def get(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self, timing: bool = True) -> str:
        summary = {
            "total": len(self.checks),
            "pass": sum(c.status == "pass" for c in self.checks),
            "fail": sum(c.status == "fail" for c in self.checks),
            "skipped": sum(c.status == "skipped" for c in self.checks),
        }
        payload = {
            "passed": self.passed,
            "summary": summary,
            "checks": [c.to_dict(timing) for c in self.checks],
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_text(self, timing: bool = True) -> str:
        lines = []
        for c in self.checks:
            extra = f"  ({c.elapsed_ms:.1f} ms)" if timing else ""
            line = f"[{c.status.upper():7}] {c.name}{extra}"
            if c.reason:
                line += f"  -- {c.reason}"
            lines.append(line)
        n_fail = len(self.failed())
        lines.append(f"{len(self.checks)} checks, {n_fail} failed: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


class CheckFailed(Exception):
    def __init__(self, reason: str, witness: dict | None = None):
        super().__init__(reason)
        self.witness = witness or {}


def _run(name: str, params: dict, fn: Callable[[], dict]) -> CheckResult:
    start = time.perf_counter()
    try:
        witness = fn()
        status, reason = "pass", ""
    except CheckFailed as e:
        witness, status, reason = e.witness, "fail", str(e)
    except ResourceError as e:
        witness, status, reason = {}, "fail", f"resource budget exceeded: {e}"
    except (ValueError, KeyError) as e:
        witness, status, reason = {}, "fail", f"{type(e).__name__}: {e}"
    elapsed = (time.perf_counter() - start) * 1000
    log.info("%s: %s (%.1f ms)", name, status, elapsed)
    return CheckResult(name, params, status, witness, elapsed, reason)


def _require(cond: bool, reason: str, **witness):
    if not cond:
        raise CheckFailed(reason, witness)


# ---------------------------------------------------------- T-words


def _ascending(f: Morphism, w: str, d: int) -> str:
    """w f(w) f^2(w) ... f^d(w)."""
    parts, cur = [], w
    for _ in range(d + 1):
        parts.append(cur)
        cur = f.apply(cur)
    return "".join(parts)


def _descending(f: Morphism, w: str, top: int) -> str:
    """f^top(w) ... f(w) w; empty when top < 0."""
    parts, cur = [], w
    for _ in range(top + 1):
        parts.append(cur)
        cur = f.apply(cur)
    return "".join(reversed(parts))


def build_T23(d: int, f: Morphism = presets.f, g: Morphism = presets.g) -> tuple[str, str]:
    p = "e" + g.apply(_ascending(f, "3", d))
    s = g.apply(_descending(f, "01203", d - 1)) + "abcdeacdb"
    return p + s, g.apply(iterate(f, "23", d))


def build_T0324(d: int, f: Morphism = presets.f, g: Morphism = presets.g) -> tuple[str, str]:
    # the g(f^d(0)) block appears once, between the prefix and suffix parts
    p = "acdbecd" + g.apply(_ascending(f, "24", d))
    s = g.apply(_descending(f, "01240", d - 1)) + "abcdbecde"
    return p + g.apply(iterate(f, "0", d)) + s, g.apply(iterate(f, "0324", d))


def build_T01240323(d: int, f: Morphism = presets.f, g: Morphism = presets.g) -> tuple[str, str]:
    p = "ecdeacdbe" + g.apply(_ascending(f, "0323", d))
    s = g.apply(_descending(f, "012", d)) + "abcdb"
    return p + s, g.apply(iterate(f, "01240323", d))


def build_T01203(d: int, f: Morphism = presets.f, g: Morphism = presets.g) -> tuple[str, str]:
    p = "d" + g.apply(_ascending(f, "3", d))
    s = g.apply(_descending(f, "012", d)) + "abcdeac"
    return p + s, g.apply(iterate(f, "01203", d))


BUILDERS = {3: build_T23, 4: build_T0324, 5: build_T01240323, 6: build_T01203}

# Finite facts each lemma's induction step relies on.
# ("suffix"|"prefix", piece, morphism, letter that has it, letter that lacks it)
# ("before"|"after", context, allowed neighbour letters)
PROOF_FACTS = {
    3: [
        ("before", "3", "02"),
        ("suffix", "e", "g", "2", "0"),
        ("suffix", "23", "f", "2", "0"),
        ("after", "3", "02"),
        ("prefix", "abcdeacdb", "g", "2", "0"),
        ("prefix", "012032", "f", "2", "0"),
    ],
    4: [
        ("before", "2", "13"),
        ("suffix", "acdbecd", "g", "3", "1"),
        ("suffix", "324", "f", "3", "1"),
        ("after", "0", "13"),
        ("prefix", "abcdbecde", "g", "3", "1"),
        ("prefix", "012403", "f", "3", "1"),
    ],
    5: [
        ("before", "03", "24"),
        ("suffix", "ecdeacdbe", "g", "4", "2"),
        ("suffix", "40323", "f", "4", "2"),
        ("after", "12", "04"),
        ("prefix", "abcdb", "g", "4", "0"),
        ("prefix", "0124", "f", "4", "0"),
    ],
    6: [
        ("before", "3", "02"),
        ("suffix", "d", "g", "0", "2"),
        ("suffix", "03", "f", "0", "2"),
        ("after", "012", "04"),
        ("prefix", "abcdeac", "g", "0", "4"),
        ("prefix", "0120", "f", "0", "4"),
    ],
}


class PaperVerifier:
    def __init__(self, config: Config | None = None):
        self.config = config or Config()
        cfg = self.config
        self.f = power(cfg.F, 3)
        self.g = compose(cfg.G, power(cfg.F, 2))
        self.f = Morphism(self.f.source, self.f.target, self.f.images, name="f")
        self.g = Morphism(self.g.source, self.g.target, self.g.images, name="g")
        self._oracle: MembershipOracle | None = None
        self._oracle_error: str = ""

    @property
    def oracle(self) -> MembershipOracle:
        if self._oracle is None:
            if self._oracle_error:
                raise CheckFailed(f"membership oracle unavailable: {self._oracle_error}")
            try:
                self._oracle = MembershipOracle(
                    self.f, presets.SEED, self.g,
                    presets.UNDERLYING_MARKER, presets.CODED_MARKER,
                    base_bound=self.config.base_bound, max_depth=self.config.max_depth,
                )
            except ValueError as e:
                self._oracle_error = str(e)
                raise CheckFailed(f"membership oracle unavailable: {e}") from None
        return self._oracle

    # ------------------------------------------------------------ tables

    def check_tables(self) -> list[CheckResult]:
        out = []
        for label, computed, expected in (
            ("f", self.f, self.config.expected_f),
            ("g", self.g, self.config.expected_g),
        ):
            def fn(computed=computed, expected=expected):
                diffs = {x: {"computed": computed.images.get(x), "expected": expected[x]}
                         for x in expected if computed.images.get(x) != expected[x]}
                _require(not diffs, f"{len(diffs)} image(s) differ", diffs=diffs)
                return {"images": dict(computed.images)}
            formula = "F^3" if label == "f" else "G o F^2"
            out.append(_run(f"table-identity:{label}", {"formula": formula}, fn))
        return out

    def check_markers(self) -> list[CheckResult]:
        def make(level: str):
            def fn():
                check = self.oracle.marker_checks[level]
                _require(check.verified, check.witness, **check.to_dict())
                return check.to_dict()
            return fn
        return [
            _run("marker:underlying", {"marker": presets.UNDERLYING_MARKER, "morphism": "f"}, make(UNDERLYING_LEVEL)),
            _run("marker:coded", {"marker": presets.CODED_MARKER, "morphism": "g"}, make(CODED_LEVEL)),
        ]

    # ----------------------------------------------------------- lemma 2

    def c_members(self, max_len: int) -> dict[str, str]:
        """Words of the C family of length <= max_len, keyed by their label."""
        F, f = self.config.F, self.f
        out = {"F(2)": F.apply("2"), "F^2(2)": iterate(F, "2", 2)}
        for label, w, m in (("F^{}(4)", "4", F), ("f^{}(0)", "0", f)):
            d = 1
            while True:
                img = iterate(m, w, d)
                if len(img) > max_len:
                    break
                out[label.format(d)] = img
                d += 1
        return {k: v for k, v in out.items() if len(v) <= max_len}

    def verify_lemma2(self) -> list[CheckResult]:
        cfg = self.config
        F = cfg.F
        out = []

        def literal():
            got4, got5 = iterate(F, "2", 4), iterate(F, "2", 5)
            _require(got4 == F4_2, "F^4(2) differs", computed=got4, expected=F4_2)
            _require(got5 == F5_2, "F^5(2) differs", computed=got5, expected=F5_2)
            return {"F^4(2)": got4, "F^5(2)": got5}

        out.append(_run("lemma2:literal-values", {}, literal))

        def c1():
            universe = self.oracle.underlying
            probe = min(universe.bound, 64)
            run = max((n for n in range(1, probe + 1)
                       if any("1" not in u for u in universe.of_length(n))), default=0)
            _require(run < probe, "1-free factors as long as the probe; index bound unavailable", run=run)
            bound = run + 1
            scan = bound + cfg.index_margin
            found = complete_classes_up_to(universe, scan, index_filter=1)
            got = sorted(c.canonical for c in found)
            expected = sorted(class_of(w).canonical for w in C1_WORDS)
            witness = {
                "longest_1_free_factor": run,
                "index_le_1_length_bound": bound,
                "scanned_up_to": scan,
                "classes": [c.canonical for c in found],
                "expected": expected,
            }
            _require(got == expected, "index<=1 complete classes differ from C1", **witness)
            _require(all(c.length <= bound for c in found), "class longer than the run bound", **witness)
            return witness

        out.append(_run("lemma2:index-le-1-classes", {"max_index": 1, "margin": cfg.index_margin}, c1))

        for n, base, conj in ((4, F4_2, F4_2_CONJUGATE), (5, F5_2, F5_2_CONJUGATE)):
            label = f"F^{n}(2)"

            def nonfactor(n=n, conj=conj, label=label):
                computed = iterate(F, "2", n)
                offset = is_rotation_of(conj, computed)
                _require(offset is not None, f"{conj} is not a conjugate of {label}", computed=computed)
                verdict = self.oracle.decide(conj, UNDERLYING_LEVEL)
                witness = {"conjugate": conj, "offset": offset, "derivation": verdict.to_dict(REPORT_WORD_LIMIT)}
                _require(not verdict.is_factor, f"{conj} is a factor", **witness)
                _require(self.oracle.replay(verdict), "certificate does not replay", **witness)
                return witness
            out.append(_run(f"lemma2:nonfactor-conjugate:{label}", {"word": base}, nonfactor))

        def all_classes():
            n = cfg.lemma2_enum_len
            universe = self.oracle.underlying
            found = [c.canonical for c in complete_classes_up_to(universe, n)]
            members = self.c_members(n)
            expected = sorted({class_of(w).canonical for w in members.values() if len(w) >= 2},
                              key=lambda s: (len(s), s))
            witness = {"max_len": n, "complete": found, "expected": expected,
                       "c_members": members}
            _require(found == expected, "complete classes differ from the C family", **witness)
            return witness

        out.append(_run("lemma2:complete-classes", {"max_len": cfg.lemma2_enum_len}, all_classes))
        return out

    # --------------------------------------------------------- theorem 1

    def verify_theorem1(self) -> list[CheckResult]:
        n = self.config.theorem_max_len

        def no_classes():
            under = closure_factor_set(self.f, presets.SEED, coding_span(n, self.g))
            universe = coded_factor_set(under, self.g, n)
            found = complete_classes_up_to(universe, n)
            counts = universe.counts(n)
            witness = {
                "max_class_len": n,
                "complete_classes": [c.canonical for c in found],
                "factor_counts": counts[1:],
            }
            _require(not found, f"{len(found)} complete classes found", **witness)
            return witness

        def threshold():
            short = len(self.g.apply(self.config.F.apply("2")))
            long_ = len(self.g.apply(iterate(self.config.F, "2", 2)))
            witness = {"|g(F(2))|": short, "|g(F^2(2))|": long_, "max_class_len": n}
            _require(short < long_ == 40 <= n, "length threshold fact fails", **witness)
            return witness

        return [
            _run("theorem1:no-complete-classes", {"min_len": 2, "max_len": n}, no_classes),
            _run("theorem1:length-threshold", {}, threshold),
        ]

    # --------------------------------------------------- forbidden words

    def forbidden_factor_check(self, words: dict[int, str] | None = None) -> list[CheckResult]:
        words = words or FORBIDDEN
        out = []
        for lemma, w in sorted(words.items()):
            def fn(w=w):
                universe = closure_factor_set(self.f, presets.SEED, len(w))
                present = w in universe
                decided = self.oracle.decide(w, UNDERLYING_LEVEL)
                witness = {"word": w, "bound": universe.bound, "closure_verdict": "factor" if present else "non-factor",
                           "decider_verdict": decided.verdict}
                _require(not present, f"{w} is a factor", **witness)
                _require(not decided.is_factor, "decider disagrees with closure", **witness)
                return witness
            out.append(_run(f"forbidden:{w}", {"lemma": lemma}, fn))
        return out

    # --------------------------------------------------------- lemmas 3-6

    def proof_facts(self, lemma: int) -> CheckResult:
        def fn():
            maps = {"f": self.f, "g": self.g}
            universe = self.oracle.underlying
            results = []
            for fact in PROOF_FACTS[lemma]:
                kind = fact[0]
                if kind in ("suffix", "prefix"):
                    _, piece, mname, has, lacks = fact
                    m = maps[mname]
                    test = str.endswith if kind == "suffix" else str.startswith
                    ok = test(m.images[has], piece) and not test(m.images[lacks], piece)
                    results.append({"fact": f"{piece!r} is a {kind} of {mname}({has}) and not of {mname}({lacks})",
                                    "holds": ok})
                else:
                    _, context, allowed = fact
                    n = len(context) + 1
                    if kind == "before":
                        seen = sorted({u[0] for u in universe.of_length(n) if u[1:] == context})
                    else:
                        seen = sorted({u[-1] for u in universe.of_length(n) if u[:-1] == context})
                    ok = "".join(seen) == allowed
                    results.append({"fact": f"letters {kind} {context!r} are {sorted(allowed)}",
                                    "observed": seen, "holds": ok})
            bad = [r for r in results if not r["holds"]]
            _require(not bad, f"{len(bad)} fact(s) fail", facts=results)
            return {"facts": results}
        return _run(f"lemma{lemma}:proof-facts", {}, fn)

    def verify_lemma(self, lemma: int, d: int) -> CheckResult:
        def fn():
            T, target = BUILDERS[lemma](d, self.f, self.g)
            offset = is_rotation_of(T, target)
            witness = {
                "T": render_word(T, REPORT_WORD_LIMIT),
                "target": render_word(target, REPORT_WORD_LIMIT),
                "length": len(T),
                "target_length": len(target),
                "rotation_offset": offset,
                "forbidden_reduction": FORBIDDEN[lemma],
            }
            if d == 0:
                witness["note"] = "empty products read as the empty word"
            _require(offset is not None, "T is not a rotation of the target", **witness)
            verdict = self.oracle.decide(T, CODED_LEVEL)
            witness["derivation_steps"] = verdict.size()
            witness["derivation_depth"] = verdict.depth()
            _require(not verdict.is_factor, "T is a factor of w5", **witness)
            _require(self.oracle.replay(verdict), "certificate does not replay", **witness)
            forbidden = self.oracle.decide(FORBIDDEN[lemma], UNDERLYING_LEVEL)
            _require(not forbidden.is_factor, f"{FORBIDDEN[lemma]} is a factor", **witness)
            return witness
        return _run(f"lemma{lemma}:d={d}", {"lemma": lemma, "d": d}, fn)

    # ------------------------------------------------------------- all

    def full_report(self) -> VerificationReport:
        cfg = self.config
        report = VerificationReport()
        report.checks += self.check_tables()
        report.checks += self.check_markers()
        report.checks += self.verify_lemma2()
        report.checks += self.verify_theorem1()
        report.checks += self.forbidden_factor_check()
        for lemma in LEMMA_IDS:
            report.checks.append(self.proof_facts(lemma))
            for d in range(cfg.min_d, cfg.max_d + 1):
                report.checks.append(self.verify_lemma(lemma, d))
        return report


def full_report(config: Config | None = None) -> VerificationReport:
    return PaperVerifier(config).full_report()
