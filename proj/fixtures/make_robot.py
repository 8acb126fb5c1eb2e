#!/usr/bin/env python3
"""Writes the robot grid fixtures.

Cell numbering is 5*(row-1)+col. d_i moves down from row i, e_j moves right
from column j. Cells 8, 9 and 19 are forbidden. e5 and d5 are declared but
label no transition.
"""

import json
import pathlib

HERE = pathlib.Path(__file__).resolve().parent
ILLEGAL = {8, 9, 19}
EVENTS = [f"e{i}" for i in range(1, 6)] + [f"d{i}" for i in range(1, 6)]


def grid():
    trs = []
    for c in range(1, 26):
        row, col = (c - 1) // 5 + 1, (c - 1) % 5 + 1
        if col < 5:
            trs.append([str(c), f"e{col}", str(c + 1)])
        if row < 5:
            trs.append([str(c), f"d{row}", str(c + 5)])
    return trs


def single(event):
    return {"states": ["0", "1"], "initial": "0", "marked": ["1"], "transitions": [["0", event, "1"]]}


def prefixed_star(head, loop):
    return {
        "states": ["0", "1"],
        "initial": "0",
        "marked": ["1"],
        "transitions": [["0", head, "1"]] + [["1", e, "1"] for e in loop],
    }


DELETION = {"states": ["0"], "initial": "0", "marked": ["0"], "transitions": []}

CASES = {
    1: ({"e2"}, [{"on": {"event": "e2"}, "language": single("e1")}]),
    2: ({"e1"}, [{"on": {"event": "e1"}, "language": DELETION}]),
    3: (
        {"d2", "e2"},
        [
            {"on": {"event": "d2"}, "language": single("d2")},
            {"on": {"event": "e2"}, "language": single("e2")},
            {"on": {"source": "8", "event": "d2", "target": "13"}, "language": prefixed_star("d2", ["d2", "d3"])},
            {"on": {"source": "12", "event": "e2", "target": "13"}, "language": prefixed_star("e2", ["d2", "d3"])},
        ],
    ),
}


def model(case, nonblocking):
    attacked, attacks = CASES[case]
    states = [str(c) for c in range(1, 26)]
    legal = [s for s in states if int(s) not in ILLEGAL]
    marked = ["25"] if nonblocking else states
    return {
        "events": [
            {
                "name": e,
                "controllable": True,
                "observable": True,
                "attackable_control": False,
                "attackable_observation": e in attacked,
            }
            for e in EVENTS
        ],
        "plant": {"states": states, "initial": "1", "marked": marked, "transitions": grid()},
        "spec": {"states": legal, "marked": ["25"] if nonblocking else legal},
        "attacks": attacks,
    }


def main():
    for case in CASES:
        for nonblocking, suffix in ((False, ""), (True, "_nb")):
            path = HERE / f"robot_case{case}{suffix}.json"
            path.write_text(json.dumps(model(case, nonblocking), indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
