#!/usr/bin/env python3
"""Run the three comparison scenarios over the committed evasion fixtures.

Each fixture pair stages one classic disguise:

  devirt    - an abstract call devirtualized to its single implementer
  fanin     - an abstract call whose type has three divergent implementers
  outline   - a method body extracted into a helper ("outlining")
  move      - whole methods reordered within the class
  threshold - shared content chopped below the default tile threshold

For every pair the script prints matched / involved / IMT / similarity under
LA (linearization + inlining), LA-M (inlining only), and, where source text
exists, the SLT lexical baseline.

Run from the repository root:  python3 demos/scenario_comparison.py
"""

from pathlib import Path

from lowdup import Mode, RunConfig, compare_paths

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests/data/fixtures"
SOURCES = ROOT / "tests/data/sources"

SCENARIOS = [
    ("devirt", "one-implementer call devirtualized"),
    ("fanin", "three divergent implementers (LA drawback)"),
    ("outline", "body outlined into a helper"),
    ("move", "methods reordered"),
    ("threshold", "matches diced below min_match=2"),
]


def row(label, report):
    print(
        f"    {label:5s}  matched={report.matched_total:<4d}"
        f" involved={report.involved:<6g} imt={report.imt:<6g}"
        f" similarity={report.similarity:.4f}"
    )


def main() -> None:
    for name, blurb in SCENARIOS:
        base = FIXTURES / f"{name}_base.json"
        plag = FIXTURES / f"{name}_plag.json"
        print(f"{name}: {blurb}")
        for mode in (Mode.LA, Mode.LA_M):
            report = compare_paths(base, plag, RunConfig(mode=mode))
            row(mode.value, report)
        src_base = SOURCES / f"{name}_base.java"
        src_plag = SOURCES / f"{name}_plag.java"
        if src_base.exists() and src_plag.exists():
            report = compare_paths(src_base, src_plag, RunConfig(mode=Mode.SLT))
            row("slt", report)
        print()

    print("Readings:")
    print("  devirt    LA out-matches LA-M: linearization reunites the inlined copy")
    print("            with the abstract original.")
    print("  fanin     LA scores BELOW LA-M: three divergent implementers inflate")
    print("            the linearized body with tokens the other program never had.")
    print("  outline   LA similarity stays 1.0 while the lexical baseline drops:")
    print("            invocation inlining erases the outlining edit.")
    print("  move      method pairing ignores declaration order; the whole-stream")
    print("            lexical baseline pays for the move.")
    print("  threshold rerun with --min-match 1 to see the diced matches return.")


if __name__ == "__main__":
    main()
