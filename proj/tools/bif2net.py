#!/usr/bin/env python3
"""Convert a discrete BIF network (e.g. the bnlearn repository files) to the
line-oriented .net format read by mimb.

    python3 tools/bif2net.py alarm.bif > data/alarm.net
"""
import itertools
import re
import sys

VAR_RE = re.compile(r"variable\s+(\S+)\s*\{\s*type\s+discrete\s*\[\s*\d+\s*\]\s*\{([^}]*)\}\s*;\s*\}", re.S)
PROB_RE = re.compile(r"probability\s*\(\s*([^|)]+?)\s*(?:\|\s*([^)]*))?\)\s*\{([^}]*)\}", re.S)


def parse(text):
    states = {}
    order = []
    for name, labels in VAR_RE.findall(text):
        states[name] = [s.strip() for s in labels.split(",")]
        order.append(name)
    parents = {}
    tables = {}
    for child, plist, body in PROB_RE.findall(text):
        child = child.strip()
        pa = [p.strip() for p in plist.split(",")] if plist and plist.strip() else []
        parents[child] = pa
        rows = {}
        for line in body.split(";"):
            line = line.strip()
            if not line:
                continue
            if line.startswith("table"):
                vals = [float(v) for v in line[len("table"):].replace(",", " ").split()]
                k = len(states[child])
                # BIF "table" lists the first parent fastest, child state outermost.
                combos = list(itertools.product(*[states[p] for p in reversed(pa)]))
                n = len(combos)
                for ci, combo in enumerate(combos):
                    key = tuple(reversed(combo))
                    rows[key] = [vals[s * n + ci] for s in range(k)]
            else:
                m = re.match(r"\(([^)]*)\)\s*(.*)", line, re.S)
                key = tuple(s.strip() for s in m.group(1).split(","))
                rows[key] = [float(v) for v in m.group(2).replace(",", " ").split()]
        tables[child] = rows
    return order, states, parents, tables


def emit(order, states, parents, tables, out):
    for v in order:
        out.write("VAR %s %s\n" % (v, " ".join(states[v])))
    for v in order:
        pa = parents.get(v, [])
        out.write("\nPARENTS %s%s\nCPT %s\n" % (v, "".join(" " + p for p in pa), v))
        # Last listed parent varies fastest.
        for combo in itertools.product(*[states[p] for p in pa]):
            row = tables[v][tuple(combo)]
            out.write(" ".join(repr(x) for x in row) + "\n")


def main():
    if len(sys.argv) != 2:
        sys.exit("usage: bif2net.py FILE.bif")
    with open(sys.argv[1]) as f:
        text = f.read()
    emit(*parse(text), sys.stdout)


if __name__ == "__main__":
    main()
