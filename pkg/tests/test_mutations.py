"""Smoke coverage for the mutation engine; the full run lives in the
acceptance suite."""

import random

from skewstone import textio

import mutation_engine as me
from conftest import B4_ELEMENTS, B4_LEQ, PROD_RESTRICT, PROD_STALKS, X3_BULLET, X3_CIRC


B4_RAW = {"kind": "balg", "elements": list(B4_ELEMENTS), "leq": list(B4_LEQ), "bottom": "0"}
X3_RAW = {
    "kind": "skew",
    "elements": ["0", "x1", "x2"],
    "zero": "0",
    "circ": X3_CIRC,
    "bullet": X3_BULLET,
}
PROD_RAW = {
    "kind": "bset",
    "base": B4_RAW,
    "stalks": {e: list(m) for e, m in PROD_STALKS.items()},
    "restrict": {k: dict(v) for k, v in PROD_RESTRICT.items()},
}


def test_unmutated_fixtures_validate_and_scan_clean():
    for raw in (B4_RAW, X3_RAW, PROD_RAW):
        assert me.validate_raw(raw) is None
        outcome, _ = me.check_mutant(raw)
        assert outcome == "accept"


def test_mutations_are_consistent():
    rng = random.Random(99)
    outcomes = set()
    for _ in range(30):
        for raw in (B4_RAW, X3_RAW, PROD_RAW):
            outcome, _ = me.check_mutant(me.mutate(raw, rng))
            outcomes.add(outcome)
    assert "reject" in outcomes  # at least some edits break a law


def test_mutant_serializes_for_cli_replay(tmp_path):
    rng = random.Random(7)
    mut = me.mutate(X3_RAW, rng)
    outcome, info = me.check_mutant(mut)
    stanzas = me.raw_to_stanzas(mut, "M")
    text = "\n".join(textio.print_stanza(s) for s in stanzas)
    doc = textio.parse(text)
    assert doc.law_raw("M")["circ"] == mut["circ"]
