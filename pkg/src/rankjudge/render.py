"""Report rendering: human text and a bit-stable structured document.

The structured format is JSON, pretty-printed with a 2-space indent, keys
in emission order, and floats serialized by Python repr (shortest string
that round-trips). Parsing the document back recovers every numeric field
exactly. Human text, by contrast, rounds freely and is not a stability
surface; parse the structured form, never the text.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import ParseError

SCHEMA_VERSION = 1


def render_structured(payload: dict) -> str:
    """Serialize a report payload; output ends with a newline."""
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def parse_structured(text: str) -> dict:
    """Inverse of render_structured."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not a structured report: {exc}") from exc
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError("not a structured report: missing top-level 'kind'")
    return obj


def _num(x: Any, digits: int = 6) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, float):
        return f"{x:.{digits}g}"
    return str(x)


def _verdict(reject: bool) -> str:
    return "REJECT" if reject else "no difference shown"


def _friedman_lines(fr: dict, label: str = "Friedman screen") -> list[str]:
    d = fr["detail"]
    pairs = ", ".join(
        f"{name}={_num(mr, 4)}"
        for name, mr in zip(d["algorithms"], d["mean_ranks"])
    )
    return [
        f"{label}: m={d['m']} algorithms, n={d['n']} datasets "
        f"(direction: {d['direction']})",
        f"  mean ranks: {pairs}",
        f"  S = {_num(fr['statistic'])} on {d['dof']} dof, p = {_num(fr['p_value'], 4)}",
        f"  at alpha {_num(fr['alpha_effective'], 4)}: {_verdict(fr['reject'])}",
    ]


def _entry_line(e: dict) -> str:
    bits = [f"  {e['algo_a']} vs {e['algo_b']}:"]
    if e["statistic"] is not None:
        bits.append(f"statistic={_num(e['statistic'], 5)}")
    if e["p_raw"] is not None:
        bits.append(f"p={_num(e['p_raw'], 4)}")
    if e["p_adjusted"] is not None:
        bits.append(f"p_adj={_num(e['p_adjusted'], 4)}")
    if e["critical_value"] is not None:
        bits.append(f"critical={_num(e['critical_value'], 5)}")
    bits.append(_verdict(e["reject"]))
    if e["note"]:
        bits.append(f"[{e['note']}]")
    return " ".join(bits)


def _posthoc_lines(rep: dict) -> list[str]:
    pol = rep["policy"]
    lines = [
        f"Pairwise comparisons: test={rep['test']}, correction={pol['kind']}, "
        f"alpha={_num(pol['alpha'], 4)}, family size={rep['num_comparisons']}, "
        f"per-comparison alpha={_num(rep['per_comparison_alpha'], 4)}"
    ]
    lines.extend(_entry_line(e) for e in rep["entries"])
    if rep.get("caution"):
        lines.append(f"  {rep['caution']}")
    return lines


def _text_friedman(p: dict) -> list[str]:
    return _friedman_lines(p["friedman"])


def _text_analysis(p: dict) -> list[str]:
    lines = _friedman_lines(p["friedman"])
    if p.get("posthoc_skipped"):
        lines.append(f"  {p['posthoc_skipped']}")
    if p.get("posthoc"):
        lines.append("")
        lines.extend(_posthoc_lines(p["posthoc"]))
    return lines


def _text_stability(p: dict) -> list[str]:
    rep = p["stability"]
    a, b = rep["pair"]
    pol = rep["policy"]
    family = (
        "family size pinned at {}".format(pol["num_comparisons"])
        if pol["num_comparisons"] is not None
        else "family size scales with each pool"
    )
    lines = [
        f"Subset stability for ({a}, {b}): test={rep['test']}, "
        f"pools of {rep['cardinality']}, correction={pol['kind']} "
        f"at alpha={_num(pol['alpha'], 4)} ({family})",
        f"  significant in {rep['pools_significant']} of "
        f"{rep['pools_evaluated']} pools"
        + (" (unanimous)" if rep["unanimous"] else " (verdict flips with the pool)"),
    ]
    for d in rep["decisions"]:
        bits = [f"  pool {{{', '.join(d['pool'])}}}:"]
        if d["statistic"] is not None:
            bits.append(f"statistic={_num(d['statistic'], 5)}")
        if d["p_raw"] is not None:
            bits.append(f"p={_num(d['p_raw'], 4)}")
        if d["critical_value"] is not None:
            bits.append(f"critical={_num(d['critical_value'], 5)}")
        bits.append(_verdict(d["reject"]))
        bits.append(f"(pool Friedman p={_num(d['friedman_p'], 3)})")
        if d["note"]:
            bits.append(f"[{d['note']}]")
        lines.append(" ".join(bits))
    return lines


def _scenario_lines(sc: dict) -> list[str]:
    algos = " ".join(
        f"{a['name']}~N({_num(a['mean'], 4)},{_num(a['sd'] ** 2, 4)})"
        for a in sc["algorithms"]
    )
    pol = sc["policy"]
    lines = [
        f"  scenario: {algos}, n={sc['n_datasets']} datasets",
        f"  test={sc['test']}, correction={pol['kind']}, "
        f"alpha={_num(pol['alpha'], 4)}"
        + (
            f", family size pinned at {pol['num_comparisons']}"
            if pol["num_comparisons"] is not None
            else ""
        ),
    ]
    if sc.get("target_pair"):
        lines.append(f"  target pair: {sc['target_pair'][0]} vs {sc['target_pair'][1]}")
    if sc.get("equal_mean_subset"):
        lines.append(
            "  equal-mean subset: {" + ", ".join(sc["equal_mean_subset"]) + "}"
        )
    return lines


def _estimate_line(est: dict) -> str:
    return (
        f"{est['quantity']} estimate: {_num(est['estimate'], 5)} "
        f"+/- {_num(est['std_error'], 3)} "
        f"({est['rejections']}/{est['replicates']} rejections, seed {est['seed']})"
    )


def _text_power(p: dict) -> list[str]:
    return [_estimate_line(p["estimate"])] + _scenario_lines(p["scenario"])


def _text_fwer(p: dict) -> list[str]:
    return _text_power(p)


def _text_reproduce(p: dict) -> list[str]:
    lines = [f"Reproduction of built-in example {p['example']}"]
    if p.get("replicates"):
        lines[0] += f" ({p['replicates']} replicates, seed {p['seed']})"
    for c in p["checks"]:
        if c["pass"] is None:
            status = "INFO"
        else:
            status = "PASS" if c["pass"] else "FAIL"
        line = f"  {status} {c['name']}: observed={_num(c['observed'], 6)}"
        if c["expected"] is not None:
            line += f" expected={_num(c['expected'], 6)}"
            if c["mode"] == "abs":
                line += f" (abs tol {_num(c['tolerance'], 3)})"
            elif c["mode"] == "rel":
                line += f" (rel tol {_num(c['tolerance'], 3)})"
            elif c["mode"] == "upper-bound":
                line += f" (must not exceed it by more than {_num(c['tolerance'], 3)})"
            elif c["mode"] == "exact":
                line += " (exact)"
        if c.get("note"):
            line += f" [{c['note']}]"
        lines.append(line)
    lines.append(
        "all checks passed" if p["all_pass"] else "SOME CHECKS FAILED"
    )
    return lines


_RENDERERS = {
    "friedman": _text_friedman,
    "analysis": _text_analysis,
    "stability": _text_stability,
    "power": _text_power,
    "fwer": _text_fwer,
    "reproduce": _text_reproduce,
}


def render_text(payload: dict) -> str:
    """Human-readable rendering of any CLI payload; ends with a newline."""
    kind = payload.get("kind")
    renderer = _RENDERERS.get(kind)
    if renderer is None:
        raise ValueError(f"no text renderer for payload kind {kind!r}")
    return "\n".join(renderer(payload)) + "\n"
