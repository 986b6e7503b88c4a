#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from liegrowth.algebra import chevalley_algebra, subalgebra_closure
from liegrowth.rings import PrimeField
from liegrowth.roots import RootSystem


def split_algebra(label, p):
    return chevalley_algebra(RootSystem(label), PrimeField(p))


def random_generating_set(g, rng, size=2):
    while True:
        A = g.ring.random(rng, (size, g.dim))
        if subalgebra_closure(g, list(A)).is_full():
            return A
