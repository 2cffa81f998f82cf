#!/usr/bin/env python3
"""Writes the finite-group catalog used by the oracle tests.

Each group is given by permutation generators and a presentation on the
same generators. Elements are numbered breadth-first from the identity,
multiplying on the right by the generators in order; the product x*y means
"apply x, then y". The script checks that every relator evaluates to the
identity before writing anything.
"""
import argparse
import itertools
import pathlib
import re


def compose(a, b):
    return tuple(b[i] for i in a)


def cycle(n, *cycles):
    p = list(range(n))
    for c in cycles:
        for i, x in enumerate(c):
            p[x] = c[(i + 1) % len(c)]
    return tuple(p)


def regular(elements, mul, gens):
    """Right-regular permutations of generator elements."""
    index = {e: i for i, e in enumerate(elements)}
    return [tuple(index[mul(e, g)] for e in elements) for g in gens]


def quaternion_group():
    # unit quaternions as (sign, unit) with unit in 1,i,j,k
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elements = [(s, u) for s in (1, -1) for u in "1ijk"]

    def mul(x, y):
        s, u = table[(x[1], y[1])]
        return (x[0] * y[0] * s, u)

    return regular(elements, mul, [(1, "i"), (1, "j")])


def heisenberg_group(p=3):
    elements = list(itertools.product(range(p), repeat=3))  # (a, b, c) ~ [[1,a,c],[0,1,b],[0,0,1]]

    def mul(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    return regular(elements, mul, [(1, 0, 0), (0, 1, 0)])


CATALOG = {
    "C5": ([cycle(5, (0, 1, 2, 3, 4))], "a", ["a^5"]),
    "S3": ([cycle(3, (0, 1)), cycle(3, (0, 1, 2))], "a b", ["a^2", "b^3", "(a b)^2"]),
    "Z6": ([cycle(6, (0, 1, 2, 3, 4, 5))], "a", ["a^6"]),
    "D4": ([cycle(4, (0, 1, 2, 3)), cycle(4, (1, 3))], "r s", ["r^4", "s^2", "(s r)^2"]),
    "Q8": (quaternion_group(), "a b", ["a^4", "a^2 b^-2", "b' a b a"]),
    "Z2xZ2xZ2": ([cycle(6, (0, 1)), cycle(6, (2, 3)), cycle(6, (4, 5))], "a b c",
                 ["a^2", "b^2", "c^2", "[a,b]", "[a,c]", "[b,c]"]),
    "Z4xZ2": ([cycle(6, (0, 1, 2, 3)), cycle(6, (4, 5))], "a b", ["a^4", "b^2", "[a,b]"]),
    "Heis3": (heisenberg_group(3), "x y",
              ["x^3", "y^3", "[x,y]^3", "[x,[x,y]]", "[y,[x,y]]"]),
}


def closure(gens, names):
    n = len(gens[0])
    ident = tuple(range(n))
    elements = [ident]
    labels = ["1"]
    index = {ident: 0}
    head = 0
    while head < len(elements):
        for g, name in zip(gens, names):
            x = compose(elements[head], g)
            if x not in index:
                index[x] = len(elements)
                elements.append(x)
                labels.append(name if head == 0 else labels[head] + "." + name)
        head += 1
    return elements, index, labels


def evaluate(word, names, gens, n):
    """Tiny evaluator for the relator syntax used above."""
    tokens = re.findall(r"[A-Za-z_]\w*|\^-?\d+|'|[()\[\],]", word)
    pos = 0

    def inverse(p):
        q = [0] * len(p)
        for i, x in enumerate(p):
            q[x] = i
        return tuple(q)

    def power(p, e):
        r = tuple(range(n))
        base = p if e >= 0 else inverse(p)
        for _ in range(abs(e)):
            r = compose(r, base)
        return r

    def expr():
        nonlocal pos
        r = tuple(range(n))
        while pos < len(tokens) and tokens[pos] not in (")", "]", ","):
            r = compose(r, postfix())
        return r

    def postfix():
        nonlocal pos
        p = primary()
        while pos < len(tokens) and (tokens[pos] == "'" or tokens[pos].startswith("^")):
            t = tokens[pos]
            pos += 1
            p = inverse(p) if t == "'" else power(p, int(t[1:]))
        return p

    def primary():
        nonlocal pos
        t = tokens[pos]
        pos += 1
        if t == "(":
            p = expr()
            pos += 1
            return p
        if t == "[":
            x = expr()
            pos += 1
            y = expr()
            pos += 1
            return compose(compose(inverse(x), inverse(y)), compose(x, y))
        return gens[names.index(t)]

    return expr()


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir", type=pathlib.Path)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name, (gens, names, relators) in CATALOG.items():
        names_list = names.split()
        elements, index, labels = closure(gens, names_list)
        n = len(gens[0])
        for r in relators:
            if evaluate(r, names_list, gens, n) != tuple(range(n)):
                raise SystemExit(f"{name}: relator {r} is not the identity")
        with open(args.outdir / f"{name}.tbl", "w") as f:
            f.write(f"# name: {name}\n")
            f.write("# generators: " + " ".join(str(index[g]) for g in gens) + "\n")
            f.write("# labels: " + " ".join(labels) + "\n")
            f.write(f"{len(elements)}\n")
            for x in elements:
                f.write(" ".join(str(index[compose(x, y)]) for y in elements) + "\n")
        with open(args.outdir / f"{name}.pres", "w") as f:
            f.write(f"# label: {name}\n")
            f.write(f"gens: {names}\n")
            for r in relators:
                f.write(f"rel: {r}\n")
        print(f"{name}: order {len(elements)}")


if __name__ == "__main__":
    main()
