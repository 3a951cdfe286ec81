"""Deterministic CSV / JSON / text serialization of pair reports.

One row per (census, character-sum) report pair.  CSV bodies start with
``# key=value`` header lines echoing the run configuration, so any output
is reproducible from its own header.
"""

from __future__ import annotations

import csv
import io
import json

__all__ = ["CSV_COLUMNS", "row_record", "render_rows", "summarize_by_q"]

CSV_COLUMNS = [
    "n",
    "q",
    "seed",
    "pair_id",
    "on_on",
    "on_ext",
    "on_int",
    "ext_on",
    "ext_ext",
    "ext_int",
    "int_on",
    "int_ext",
    "int_int",
    "s_fg",
    "main_term_num",
    "main_term_den",
    "deviation",
    "normalized_deviation",
    "T11",
    "T12",
    "T21",
    "T22",
    "identity_holds",
    "lemma32_rhs",
    "katz_rhs",
]


def _fmt_float(x):
    if x is None:
        return ""
    return repr(float(x))


def row_record(joint, chars):
    """Flatten a (JointCountReport, CharSumReport) pair into an ordered dict."""
    c = joint.counts
    main = joint.main_term
    return {
        "n": joint.n,
        "q": joint.q,
        "seed": joint.seed,
        "pair_id": joint.pair_id,
        "on_on": c[0][0],
        "on_ext": c[0][1],
        "on_int": c[0][2],
        "ext_on": c[1][0],
        "ext_ext": c[1][1],
        "ext_int": c[1][2],
        "int_on": c[2][0],
        "int_ext": c[2][1],
        "int_int": c[2][2],
        "s_fg": joint.s_fg,
        "main_term_num": main.numerator,
        "main_term_den": main.denominator,
        "deviation": float(joint.deviation),
        "normalized_deviation": joint.normalized_deviation,
        "T11": chars.t11,
        "T12": chars.t12,
        "T21": chars.t21,
        "T22": chars.t22,
        "identity_holds": chars.identity_holds,
        "lemma32_rhs": chars.lemma32_rhs,
        "katz_rhs": chars.katz_rhs,
    }


def summarize_by_q(records):
    """Per-q mean and max of the normalized deviation, in q order."""
    by_q = {}
    for rec in records:
        by_q.setdefault(rec["q"], []).append(rec["normalized_deviation"])
    out = []
    for q in sorted(by_q):
        devs = by_q[q]
        out.append(
            {
                "q": q,
                "pairs": len(devs),
                "mean_normalized_deviation": sum(devs) / len(devs),
                "max_normalized_deviation": max(devs),
            }
        )
    return out


def _csv_value(key, value):
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float) or value is None:
        return _fmt_float(value)
    return str(value)


def render_rows(records, fmt, config=None, summary=None):
    """Render report records in the requested output format."""
    if fmt == "json":
        doc = {"config": config or {}, "rows": records}
        if summary is not None:
            doc["summary"] = summary
        return json.dumps(doc, sort_keys=True, indent=2, default=float) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        for key in sorted(config or {}):
            buf.write(f"# {key}={config[key]}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow([_csv_value(k, rec[k]) for k in CSV_COLUMNS])
        if summary is not None:
            buf.write("# summary\n")
            keys = ["q", "pairs", "mean_normalized_deviation", "max_normalized_deviation"]
            writer.writerow(keys)
            for row in summary:
                writer.writerow([_csv_value(k, row[k]) for k in keys])
        return buf.getvalue()
    if fmt == "text":
        buf = io.StringIO()
        for key in sorted(config or {}):
            buf.write(f"# {key}={config[key]}\n")
        for rec in records:
            buf.write(
                "n={n} q={q} seed={seed} pair={pair_id} census="
                "[{on_on},{on_ext},{on_int};{ext_on},{ext_ext},{ext_int};"
                "{int_on},{int_ext},{int_int}] s_fg={s_fg} "
                "dev={deviation} norm_dev={normalized_deviation:.6f} "
                "T=({T11},{T12},{T21},{T22}) identity={identity_holds}\n".format(**rec)
            )
        if summary is not None:
            buf.write("# summary\n")
            for row in summary:
                buf.write(
                    "q={q} pairs={pairs} mean_norm_dev={mean_normalized_deviation:.6f} "
                    "max_norm_dev={max_normalized_deviation:.6f}\n".format(**row)
                )
        return buf.getvalue()
    raise ValueError(f"unknown output format {fmt!r}")
