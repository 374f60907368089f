#!/usr/bin/env python3
"""Writes the bundled sample netlists (ASCII AIGER) to data/netlists/."""
import os
import sys


class Aig:
    def __init__(self, num_inputs):
        self.num_inputs = num_inputs
        self.ands = []          # (lhs, rhs0, rhs1)
        self.strash = {}
        self.outputs = []

    def input(self, i):
        return 2 * (i + 1)

    def AND(self, a, b):
        if a > b:
            a, b = b, a
        if a == 0 or a == b ^ 1:
            return 0
        if a == 1:
            return b
        if a == b:
            return a
        key = (a, b)
        if key not in self.strash:
            lhs = 2 * (self.num_inputs + len(self.ands) + 1)
            self.ands.append((lhs, b, a))
            self.strash[key] = lhs
        return self.strash[key]

    def OR(self, a, b):
        return self.AND(a ^ 1, b ^ 1) ^ 1

    def XOR(self, a, b):
        return self.OR(self.AND(a, b ^ 1), self.AND(a ^ 1, b))

    def MUX(self, s, t, e):
        return self.OR(self.AND(s, t), self.AND(s ^ 1, e))

    def text(self):
        m = self.num_inputs + len(self.ands)
        lines = [f"aag {m} {self.num_inputs} 0 {len(self.outputs)} {len(self.ands)}"]
        lines += [str(self.input(i)) for i in range(self.num_inputs)]
        lines += [str(o) for o in self.outputs]
        lines += [f"{l} {r0} {r1}" for l, r0, r1 in self.ands]
        return "\n".join(lines) + "\n"


def full_add(g, a, b, c):
    s = g.XOR(g.XOR(a, b), c)
    co = g.OR(g.AND(a, b), g.AND(c, g.XOR(a, b)))
    return s, co


def adder4():
    g = Aig(9)
    a = [g.input(i) for i in range(4)]
    b = [g.input(4 + i) for i in range(4)]
    c = g.input(8)
    for i in range(4):
        s, c = full_add(g, a[i], b[i], c)
        g.outputs.append(s)
    g.outputs.append(c)
    return g


def mult3x3():
    g = Aig(6)
    a = [g.input(i) for i in range(3)]
    b = [g.input(3 + i) for i in range(3)]
    acc = [0] * 6
    for j in range(3):
        carry = 0
        for i in range(3):
            pp = g.AND(a[i], b[j])
            acc[i + j], carry = full_add(g, acc[i + j], pp, carry)
        for t in range(j + 3, 6):
            acc[t], carry = full_add(g, acc[t], carry, 0)
    g.outputs = acc
    return g


def cmp4():
    g = Aig(8)
    a = [g.input(i) for i in range(4)]
    b = [g.input(4 + i) for i in range(4)]
    lt, eq = 0, 1
    for i in range(4):  # LSB first; higher bits override
        bit_lt = g.AND(a[i] ^ 1, b[i])
        bit_eq = g.XOR(a[i], b[i]) ^ 1
        lt = g.OR(bit_lt, g.AND(bit_eq, lt))
        eq = g.AND(eq, bit_eq)
    g.outputs = [lt, eq]
    return g


def mux8():
    g = Aig(11)
    d = [g.input(i) for i in range(8)]
    s = [g.input(8 + i) for i in range(3)]
    level = d
    for sel in s:
        level = [g.MUX(sel, level[2 * i + 1], level[2 * i]) for i in range(len(level) // 2)]
    g.outputs = level
    return g


def parity8():
    g = Aig(8)
    x = g.input(0)
    for i in range(1, 8):
        x = g.XOR(x, g.input(i))
    g.outputs = [x]
    return g


def and7():
    # chain ((((x0 x1) x2) ...) x6)
    g = Aig(7)
    x = g.input(0)
    for i in range(1, 7):
        x = g.AND(x, g.input(i))
    g.outputs = [x]
    return g


def majority5():
    g = Aig(5)
    xs = [g.input(i) for i in range(5)]
    # count with a small adder tree, output count >= 3
    s0, c0 = full_add(g, xs[0], xs[1], xs[2])
    s1, c1 = full_add(g, xs[3], xs[4], s0)
    # count = s1 + 2*(c0 + c1); >= 3 iff (c0 and c1) or ((c0 or c1) and s1)
    g.outputs = [g.OR(g.AND(c0, c1), g.AND(g.OR(c0, c1), s1))]
    return g


def c17():
    g = Aig(5)
    n1, n2, n3, n6, n7 = (g.input(i) for i in range(5))
    nand = lambda a, b: g.AND(a, b) ^ 1
    n10 = nand(n1, n3)
    n11 = nand(n3, n6)
    n16 = nand(n2, n11)
    n19 = nand(n11, n7)
    g.outputs = [nand(n10, n16), nand(n16, n19)]
    return g


SAMPLES = {
    "adder4": adder4, "mult3x3": mult3x3, "cmp4": cmp4, "mux8": mux8,
    "parity8": parity8, "and7": and7, "majority5": majority5, "c17": c17,
}


def main():
    out_dir = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(os.path.abspath(__file__)), "..", "data", "netlists")
    os.makedirs(out_dir, exist_ok=True)
    for name, build in SAMPLES.items():
        with open(os.path.join(out_dir, name + ".aag"), "w") as f:
            f.write(build().text())


if __name__ == "__main__":
    main()
