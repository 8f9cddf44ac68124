#!/usr/bin/env python3
"""Brute-force reference for the committee's relative error rates.

Every rate is computed with exact fractions over all ordered pairs, then
written as floats to tests/data/committee_reference.json. Run with --check
to verify the committed file is current.
"""

import argparse
import json
import sys
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data" / "committee_reference.json"

CASES = [
    {
        "name": "worked_example",
        "alpha": 0.5,
        "members": [
            ["A", 0, "i want to change my benefits"],
            ["B", 1, "i want to change my benefit"],
            ["C", 2, "i want to change benefits"],
            ["D", 3, "i wanna change my benefits"],
        ],
    },
    {
        "name": "consensus",
        "alpha": 0.5,
        "members": [
            ["aws", 0, "please update my mailing address"],
            ["google", 1, "please update my mailing address"],
            ["ds2", 2, "please update my mailing address"],
            ["wav2vec2", 3, "please update my mailing address"],
        ],
    },
    {
        "name": "one_gibberish",
        "alpha": 0.5,
        "members": [
            ["aws", 0, "i need a copy of my w two"],
            ["google", 1, "i need a copy of my w two"],
            ["ds2", 2, "i need a copy of my w two"],
            ["wav2vec2", 3, "zq xv plmk"],
        ],
    },
    {
        "name": "tie_by_priority",
        "alpha": 0.5,
        "members": [
            ["late", 5, "call me back tomorrow"],
            ["early", 1, "call me back tomorrow"],
            ["other", 3, "call me back tomorow"],
        ],
    },
    {
        "name": "wer_only",
        "alpha": 1.0,
        "members": [
            ["x", 0, "the claim was denied in march"],
            ["y", 1, "the claim was denied in marsh"],
            ["z", 2, "a claim was denied in march"],
        ],
    },
    {
        "name": "cer_only",
        "alpha": 0.0,
        "members": [
            ["x", 0, "my member id is seven"],
            ["y", 1, "my member id is eleven"],
            ["z", 2, "my member i d is seven"],
            ["w", 3, "member id is seven"],
        ],
    },
]


def distance(a, b):
    @lru_cache(maxsize=None)
    def d(i, j):
        if i == len(a):
            return len(b) - j
        if j == len(b):
            return len(a) - i
        return min(d(i + 1, j + 1) + (a[i] != b[j]), d(i + 1, j) + 1, d(i, j + 1) + 1)

    return d(0, 0)


def words(text):
    return tuple(text.split())


def chars(text):
    return tuple(" ".join(text.split()))


def minmax(values):
    lo, hi = min(values), max(values)
    if lo == hi:
        return [Fraction(0)] * len(values)
    return [(v - lo) / (hi - lo) for v in values]


def solve(case):
    members = sorted(case["members"], key=lambda m: m[1])
    alpha = Fraction(case["alpha"]).limit_denominator()
    texts = [m[2] for m in members]
    n = len(texts)
    wer = [[None] * n for _ in range(n)]
    cer = [[None] * n for _ in range(n)]
    for j in range(n):
        for k in range(n):
            if j == k:
                continue
            wer[j][k] = Fraction(distance(words(texts[j]), words(texts[k])), len(words(texts[j])))
            cer[j][k] = Fraction(distance(chars(texts[j]), chars(texts[k])), len(chars(texts[j])))
    avg_wer = [sum(wer[j][k] for k in range(n) if k != j) / (n - 1) for j in range(n)]
    avg_cer = [sum(cer[j][k] for k in range(n) if k != j) / (n - 1) for j in range(n)]
    norm_wer = minmax(avg_wer)
    norm_cer = minmax(avg_cer)
    combined = [alpha * w + (1 - alpha) * c for w, c in zip(norm_wer, norm_cer)]
    best = min(combined)
    winner = next(j for j in range(n) if combined[j] == best)

    def f(x):
        return None if x is None else float(x)

    return {
        "name": case["name"],
        "alpha": case["alpha"],
        "members": [{"name": m[0], "priority": m[1], "text": m[2]} for m in case["members"]],
        "order": [m[0] for m in members],
        "wer_matrix": [[f(x) for x in row] for row in wer],
        "cer_matrix": [[f(x) for x in row] for row in cer],
        "avg_wer": [f(x) for x in avg_wer],
        "avg_cer": [f(x) for x in avg_cer],
        "norm_wer": [f(x) for x in norm_wer],
        "norm_cer": [f(x) for x in norm_cer],
        "combined": [f(x) for x in combined],
        "winner": members[winner][0],
        "winner_text": texts[winner],
        "winner_er": f(combined[winner]),
        "winner_avg_wer": f(avg_wer[winner]),
        "winner_avg_cer": f(avg_cer[winner]),
    }


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--check", action="store_true", help="fail if the committed output differs")
    args = parser.parse_args()
    text = json.dumps({"cases": [solve(c) for c in CASES]}, indent=2) + "\n"
    if args.check:
        if OUT.read_text() != text:
            print(f"{OUT} is stale; rerun without --check", file=sys.stderr)
            return 1
        return 0
    OUT.write_text(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
