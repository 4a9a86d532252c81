"""Golden report cases, run over the built-in fixtures and tests/data/sample.cat.

Run this file directly with ``--write`` to regenerate tests/golden/ after an
intended change in report output, or with ``--dump`` to print every report
to stdout.
"""

import io
import os
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
GOLDEN = os.path.join(HERE, "golden")
SAMPLE = os.path.join(HERE, "data", "sample.cat")

FIXTURES = {"1": ["*"], "2": ["a", "b"], "span": ["a", "b", "c"], "square": ["a", "b", "c", "d"]}


def _cases():
    s = ["-i", SAMPLE]
    cases = [
        ("validate", s + ["validate"]),
        ("validate-fixtures", ["validate"]),
        ("show-square", ["show", "square"]),
        ("show-Xp", s + ["show", "Xp"]),
        ("show-X", s + ["show", "X"]),
        ("orthogonal-surj-mono", s + ["orthogonal", "--cocone", "surj", "--cone", "mono"]),
        ("orthogonal-arrow-mono", s + ["orthogonal", "--cocone", "arrow_cocone", "--cone", "mono"]),
        ("isbell-hom-Ya-Yb", s + ["isbell-hom", "Ya", "Yb"]),
        ("isbell-hom-Ya-X", s + ["isbell-hom", "Ya", "X"]),
        ("canonical-cylinder-X", s + ["canonical-cylinder", "X"]),
        ("lemma1", s + ["lemma1", "--final", "H", "--initial", "K",
                        "--cocone", "arrow_cocone", "--cone", "mono"]),
        ("lemma2-X-a", s + ["lemma2", "X", "a"]),
        ("lemma2-X-b", s + ["lemma2", "X", "b"]),
        ("dualise-X", s + ["dualise", "X"]),
        ("factorise-envelope", s + ["factorise", "--system", "envelope", "--cylinder", "ecyl"]),
        ("factorise-source", s + ["factorise", "--system", "source", "--cylinder", "single"]),
        ("check-axioms-covering", ["check-axioms", "--system", "covering", "--samples", "40"]),
        ("check-axioms-limit-square", ["check-axioms", "--system", "limit", "--category", "square",
                                       "--samples", "40", "--seed", "7"]),
        ("check-axioms-envelope-2", ["check-axioms", "--system", "envelope", "--category", "2",
                                     "--max-index", "2", "--max-set", "2", "--samples", "15"]),
        ("yoneda-2-b-json", ["--format", "json", "yoneda", "2", "b"]),
        ("factorise-covering-json", s + ["--format", "json", "factorise", "--system", "covering",
                                         "--cylinder", "cyl"]),
    ]
    for system in ("limit", "colimit", "ofs", "covering", "array"):
        cases.append((f"factorise-{system}", s + ["factorise", "--system", system, "--cylinder", "cyl"]))
    for cat, objs in FIXTURES.items():
        for o in objs:
            cases.append((f"yoneda-{cat}-{o}", ["yoneda", cat, o]))
    for cat in ("1", "2", "square"):
        cases.append((f"arrow-check-{cat}", ["arrow-check", cat]))
    return cases


CASES = _cases()


def run_case(argv):
    from isbell.cli.main import run
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue().replace(HERE, "<tests>")


def golden_path(name):
    return os.path.join(GOLDEN, name + ".txt")


def render_case(argv):
    code, text = run_case(argv)
    return f"exit: {code}\n{text}"


if __name__ == "__main__":
    if "--dump" in sys.argv:
        for name, argv in CASES:
            sys.stdout.write(f"== {name}\n{render_case(argv)}")
        sys.exit(0)
    if "--write" not in sys.argv:
        sys.exit("usage: golden_cases.py --write | --dump")
    os.makedirs(GOLDEN, exist_ok=True)
    for name, argv in CASES:
        with open(golden_path(name), "w", encoding="utf-8") as fh:
            fh.write(render_case(argv))
    print(f"wrote {len(CASES)} golden reports")
