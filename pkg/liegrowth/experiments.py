#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Experiment drivers.

Every experiment declares its defaults and parameter information the same
way: `get_default_parameters()` returns a dict and `get_parameters_info()`
maps each key to (type, range, description, flag), where flag 1 marks
parameters exposed as command line options. Randomness comes from
`numpy.random.default_rng([seed, p, trial])`, so trials are reproducible
one by one and parallel runs agree with sequential ones.
"""

import csv
import json
import logging
from copy import deepcopy
from dataclasses import asdict, dataclass
from math import floor, log
from multiprocessing import Pool
from time import time

import numpy as np
from h5py import File

from liegrowth.algebra import (chevalley_algebra, simplicity_check,
                               subalgebra_closure, witt_algebra)
from liegrowth.core import (CutoffExceeded, NotInert, PrimeTooSmall,
                            get_workers, h5_store_str, h5_store_table,
                            write_h5_header)
from liegrowth.extremal import (degenerate_quadratic_case,
                                extremal_basis_pipeline)
from liegrowth.forms import (build_covering, build_form, favorable_pair,
                             get_forms, load_form, reduce_covering,
                             sl2_triple_in_covering)
from liegrowth.growth import (Ball, WittProcedure, diameter,
                              line_growth_experiment, line_stat, towers,
                              towering_containment)
from liegrowth.numfields import (density_scan, gaussian_period_polynomial,
                                 independent_family)
from liegrowth.rings import PrimeField, check_prime
from liegrowth.roots import RootSystem

LOG = logging.getLogger('experiments')

DIAMETER_MAX = 2**24


def check_parameters(pars, info):
    """Validate a parameter dict against its info tuples."""
    for k in pars:
        if k not in info:
            raise ValueError(f'unknown parameter {k}')
    for k, (typ, rng, desc, _) in info.items():
        v = pars[k]
        if typ is list:
            if not isinstance(v, list) or not all(
                    isinstance(x, rng) for x in v):
                raise ValueError(f'{k} must be a list of {rng.__name__}')
        elif typ is str:
            if not isinstance(v, str) or (rng is not None and v not in rng):
                raise ValueError(f'{k} must be one of {rng}')
        else:
            if typ is float and isinstance(v, int):
                v = pars[k] = float(v)
            if not isinstance(v, typ) or isinstance(v, bool):
                raise ValueError(f'{k} must be {typ.__name__}')
            lo, hi = rng
            if (lo is not None and v < lo) or (hi is not None and v > hi):
                raise ValueError(f'{k} = {v} outside [{lo}, {hi}]')
    return pars


def algebra_for(kind, p):
    """Split Chevalley algebra, packaged form, or the Witt algebra 'W'."""
    if kind == 'W':
        return witt_algebra(p)
    if kind in get_forms():
        desc = load_form(kind)
        if desc.twist > 1:
            return build_form(desc, p).algebra
        return chevalley_algebra(desc.root_system(), PrimeField(p))
    return chevalley_algebra(RootSystem(kind), PrimeField(p))


def resolve_generators(g, names):
    out = []
    for name in names:
        if name in g.named:
            out.append(g.element(name))
        else:
            out.append(g.basis(g.index(name)))
    return out


def trial_rng(seed, p, trial):
    return np.random.default_rng([seed, p, trial])


@dataclass
class ExperimentConfig:
    name: str
    pars: dict


@dataclass
class ExperimentRecord:
    p: int
    trial: int
    generated: bool
    diameter: int = None
    ball_size: int = None
    ball_k: int = None
    delta: float = None
    elapsed: float = None


@dataclass
class ExperimentOutput:
    name: str
    columns: list
    rows: list
    summary: dict
    document: dict = None
    ok: bool = True


class Experiment:
    name = None

    @staticmethod
    def get_default_parameters():
        return {}

    @staticmethod
    def get_parameters_info():
        return {}

    def __init__(self, pars={}):
        self.log = logging.getLogger(self.__class__.__name__)
        pars = {**deepcopy(self.get_default_parameters()), **deepcopy(pars)}
        self.pars = check_parameters(pars, self.get_parameters_info())

    def config(self):
        return ExperimentConfig(self.name, deepcopy(self.pars))

    def run(self):
        raise NotImplementedError()


class ConstructExperiment(Experiment):
    """Build algebras, check Jacobi and test simplicity."""

    name = 'construct'

    @staticmethod
    def get_default_parameters():
        return {'type': 'A2', 'p': [7], 'trials': 10, 'seed': 0}

    @staticmethod
    def get_parameters_info():
        return {
            'type': (str, None, 'Cartan type, form name or W', 1),
            'p': (list, int, 'Primes', 1),
            'trials': (int, (1, None), 'Simplicity trials', 1),
            'seed': (int, (0, None), 'Random seed', 1),
        }

    def run(self):
        rows = []
        doc = {}
        for p in self.pars['p']:
            g = algebra_for(self.pars['type'], p)
            g.check_jacobi()
            v = simplicity_check(g, self.pars['trials'],
                                 trial_rng(self.pars['seed'], p, 0))
            rows.append([self.pars['type'], p, g.dim, str(g.ring),
                         int(v.probably_simple)])
            doc[str(p)] = g.to_json()
        return ExperimentOutput(self.name,
                                ['type', 'p', 'dim', 'ring', 'simple'], rows,
                                {'algebras': len(rows)}, doc)


class DiameterExperiment(Experiment):
    """Exact diameters with per-layer sizes and line statistics."""

    name = 'diameter'

    @staticmethod
    def get_default_parameters():
        return {'type': 'A1', 'p': [7], 'gens': ['e', 'f'],
                'cutoff': DIAMETER_MAX}

    @staticmethod
    def get_parameters_info():
        return {
            'type': (str, None, 'Cartan type, form name or W', 1),
            'p': (list, int, 'Primes', 1),
            'gens': (list, str, 'Generator names or basis labels', 1),
            'cutoff': (int, (1, None), 'Largest |g| for exact diameters', 1),
        }

    def run(self):
        rows = []
        diameters = {}
        for p in self.pars['p']:
            g = algebra_for(self.pars['type'], p)
            A = resolve_generators(g, self.pars['gens'])
            diam = diameter(g, A, self.pars['cutoff'])
            B = Ball(g, A).grow_to(diam)
            for k in range(1, diam + 1):
                rec = line_stat(g, B.elements(k), k)
                rows.append([p, k, B.size(k), rec.ell,
                             ' '.join(str(int(a)) for a in rec.witness)
                             if rec.witness is not None else ''])
            diameters[str(p)] = diam
            self.log.info(f'diameter {self.pars["type"]} p={p}: {diam}')
        return ExperimentOutput(self.name,
                                ['p', 'k', 'size', 'ell', 'witness'], rows,
                                {'diameters': diameters})


class LineGrowthExperiment(Experiment):
    """Line statistic tables until a full line appears."""

    name = 'line-growth'

    @staticmethod
    def get_default_parameters():
        return {'type': 'A1', 'p': [101], 'gens': ['e', 'f'], 'max_k': 0}

    @staticmethod
    def get_parameters_info():
        return {
            'type': (str, None, 'Cartan type, form name or W', 1),
            'p': (list, int, 'Primes', 1),
            'gens': (list, str, 'Generator names or basis labels', 1),
            'max_k': (int, (0, None), 'Last k (0 until the line is full)',
                      1),
        }

    def run(self):
        rows = []
        summary = {}
        for p in self.pars['p']:
            g = algebra_for(self.pars['type'], p)
            A = resolve_generators(g, self.pars['gens'])
            recs = line_growth_experiment(g, A, self.pars['max_k'] or None)
            for r in recs:
                rows.append([
                    p, r.k, r.size, r.ell, r.ell_next,
                    '' if r.exponent is None else f'{r.exponent:.6f}',
                    r.sum_size, r.product_size,
                    int(r.bound_ok)
                ])
            summary[str(p)] = {
                'full_at': recs[-1].k if recs[-1].ell == p else None,
                'bound_ok': all(r.bound_ok for r in recs),
            }
        return ExperimentOutput(self.name, [
            'p', 'k', 'size', 'ell', 'ell_2k_d', 'exponent', 'sum', 'product',
            'bound_ok'
        ], rows, summary)


class TowersExperiment(Experiment):
    """Span growth of plain and relative towers on random instances."""

    name = 'towers'

    @staticmethod
    def get_default_parameters():
        return {'type': 'A2', 'p': [5], 'trials': 20, 'seed': 0,
                'containment': 0}

    @staticmethod
    def get_parameters_info():
        return {
            'type': (str, None, 'Cartan type, form name or W', 1),
            'p': (list, int, 'Primes', 1),
            'trials': (int, (1, None), 'Random instances', 1),
            'seed': (int, (0, None), 'Random seed', 1),
            'containment':
            (int, (0, 6), 'Also check containments with m + n up to this', 1),
        }

    def run(self):
        rows = []
        violations = 0
        checked = 0
        contain = {'m+n-1': 0, 'm+n': 0}
        for p in self.pars['p']:
            g = algebra_for(self.pars['type'], p)
            d = g.dim
            for t in range(self.pars['trials']):
                rng = trial_rng(self.pars['seed'], p, t)
                A = g.ring.random(rng, (2, d))
                b = g.ring.random(rng, d)
                if not subalgebra_closure(g, list(A)).is_full() or \
                        not np.any(b):
                    continue
                checked += 1
                plain = towers(g, A, d)
                rel = towers(g, A, d, pivot=[b])
                bad = any(plain.spans[k] < min(d, k) for k in range(d + 1))
                bad = bad or rel.spans[d] != d
                violations += int(bad)
                rows.append([p, t, ' '.join(map(str, plain.spans)),
                             ' '.join(map(str, rel.spans)), int(bad)])
                top = self.pars['containment']
                for m in range(1, top):
                    for n in range(1, top - m + 1):
                        res = towering_containment(g, A, b, m, n)
                        for key in contain:
                            contain[key] += int(not res[key])
        return ExperimentOutput(
            self.name, ['p', 'trial', 'plain_spans', 'relative_spans',
                        'violation'], rows,
            {'checked': checked, 'violations': violations,
             'containment_failures': contain}, ok=violations == 0)


class ExtremalExperiment(Experiment):
    """Extremal non-sandwich bases with certificates."""

    name = 'extremal'

    @staticmethod
    def get_default_parameters():
        return {'type': '2A2', 'p': [7], 'degenerate': 0}

    @staticmethod
    def get_parameters_info():
        return {
            'type': (str, None, 'Form name', 1),
            'p': (list, int, 'Primes > 5', 1),
            'degenerate': (int, (0, 1), 'Also run the twisted sl4 case', 1),
        }

    def run(self):
        rows = []
        certs = {}
        ok = True
        for p in self.pars['p']:
            res = extremal_basis_pipeline(self.pars['type'], p)
            cert = res.certificate(self.pars['type'], p)
            certs[str(p)] = cert
            ok = ok and cert['ok']
            rows.append([p, res.algebra.dim, len(res.basis),
                         ' '.join(map(str, res.decomposition.dims)),
                         max(res.nilpotency, default=0), int(cert['ok'])])
        doc = {'certificates': certs}
        if self.pars['degenerate']:
            doc['degenerate'] = [degenerate_quadratic_case(4, p, 2)
                               for p in self.pars['p']]
        return ExperimentOutput(self.name, [
            'p', 'dim', 'basis', 'eigenspace_dims', 'max_nilpotency', 'ok'
        ], rows, {'ok': ok}, doc, ok=ok)


class _PairTrial:

    def __init__(self, kind, seed, c, timing, cutoff=DIAMETER_MAX):
        self.kind = kind
        self.seed = seed
        self.c = c
        self.cutoff = cutoff
        self.timing = timing
        self.cache = {}

    def algebra(self, p):
        if p not in self.cache:
            self.cache[p] = algebra_for(self.kind, p)
        return self.cache[p]

    def __call__(self, job):
        p, t = job
        t1 = time()
        g = self.algebra(p)
        rng = trial_rng(self.seed, p, t)
        X = g.ring.random(rng, g.dim)
        Y = g.ring.random(rng, g.dim)
        rec = ExperimentRecord(p, t, subalgebra_closure(g, [X, Y]).is_full())
        k = max(1, floor(self.c * log(p)))
        B = Ball(g, [X, Y])
        B.grow_to(k)
        rec.ball_k = k
        rec.ball_size = B.size(k)
        rec.delta = log(rec.ball_size) / log(p)
        if rec.generated and p**g.dim <= self.cutoff:
            while not B.full:
                B.grow()
            rec.diameter = B.level
        if self.timing:
            rec.elapsed = round(time() - t1, 3)
        return rec


class RandomPairExperiment(Experiment):
    """Generation rate and diameters of random pairs."""

    name = 'random-pairs'

    @staticmethod
    def get_default_parameters():
        return {'type': 'A1', 'p': [101, 211], 'trials': 20, 'seed': 0,
                'c': 1.0, 'timing': 0, 'cutoff': DIAMETER_MAX}

    @staticmethod
    def get_parameters_info():
        return {
            'type': (str, None, 'Cartan type, form name or W', 1),
            'p': (list, int, 'Primes', 1),
            'trials': (int, (1, None), 'Trials per prime', 1),
            'seed': (int, (0, None), 'Random seed', 1),
            'c': (float, (0, None), 'Ball radius factor in c log p', 1),
            'timing': (int, (0, 1), 'Record elapsed times', 1),
            'cutoff': (int, (1, None), 'Largest |g| for exact diameters', 1),
        }

    def run(self):
        jobs = [(p, t) for p in self.pars['p']
                for t in range(self.pars['trials'])]
        worker = _PairTrial(self.pars['type'], self.pars['seed'],
                            float(self.pars['c']), self.pars['timing'],
                            self.pars['cutoff'])
        workers = get_workers()
        if workers > 1:
            with Pool(workers) as pool:
                recs = pool.map(worker, jobs)
        else:
            recs = [worker(j) for j in jobs]
        summary = summarize_pairs(recs)
        cols = list(asdict(recs[0]).keys()) if recs else []
        rows = [list(asdict(r).values()) for r in recs]
        return ExperimentOutput(self.name, cols, rows, summary)


def summarize_pairs(recs):
    """Generation rate, diameter statistics and fitted C per prime; all
    values follow from the records."""
    out = {}
    fitted = []
    for p in sorted({r.p for r in recs}):
        rs = [r for r in recs if r.p == p]
        gen = [r for r in rs if r.generated]
        diams = [r.diameter for r in gen if r.diameter is not None]
        entry = {
            'trials': len(rs),
            'rate': len(gen) / len(rs),
            'mean_delta': float(np.mean([r.delta for r in rs])),
        }
        if diams:
            entry['max_diameter'] = max(diams)
            entry['mean_diameter'] = float(np.mean(diams))
            entry['C'] = max(diams) / log(p)
            fitted.append(entry['C'])
        else:
            entry['note'] = 'diameter not computed above |g| = 2^24'
        out[str(p)] = entry
    return {'primes': out, 'C': max(fitted) if fitted else None}


class WittExperiment(Experiment):
    """Constructive expressions in the Witt algebra."""

    name = 'witt'

    @staticmethod
    def get_default_parameters():
        return {'p': [5, 7, 11], 'samples': 50, 'seed': 0, 'exact_max': 7}

    @staticmethod
    def get_parameters_info():
        return {
            'p': (list, int, 'Primes >= 5', 1),
            'samples': (int, (1, None), 'Random elements per prime', 1),
            'seed': (int, (0, None), 'Random seed', 1),
            'exact_max': (int, (0, None), 'Exact diameters up to this p', 1),
        }

    def run(self):
        rows = []
        ok = True
        for p in self.pars['p']:
            res = witt_run(p, self.pars['samples'], self.pars['seed'],
                           p <= self.pars['exact_max'])
            ok = ok and res['verified']
            rows.append([
                p, res['max_weight'], f'{res["ratio"]:.6f}',
                res['line_e0'], '' if res['diameter'] is None else
                res['diameter'], int(res['verified'])
            ])
        return ExperimentOutput(
            self.name,
            ['p', 'max_weight', 'ratio', 'line_e0', 'diameter', 'verified'],
            rows, {'ratios': {str(r[0]): r[2] for r in rows}}, ok=ok)


def witt_run(p, samples, seed, exact):
    g = witt_algebra(p)
    W = WittProcedure(g)
    rng = trial_rng(seed, p, 0)
    weights = []
    verified = True
    for _ in range(samples):
        u = g.ring.random(rng, g.dim)
        e = W.expression(u)
        verified = verified and W.verify(u, e)
        weights.append(e.weight)
    line_e0 = max(W.line(0, a).weight for a in range(1, p))
    diam = None
    if exact:
        diam = diameter(g, [W.env['a0'], W.env['a1']])
    return {
        'p': p,
        'max_weight': max(weights),
        'ratio': max(weights) / (p * log(p)),
        'line_e0': line_e0,
        'diameter': diam,
        'verified': verified,
    }


class ChebotarevExperiment(Experiment):
    """Inert prime densities of cyclic fields."""

    name = 'chebotarev'

    @staticmethod
    def get_default_parameters():
        return {'d': 2, 'count': 2, 'bound': 10**5, 'q': []}

    @staticmethod
    def get_parameters_info():
        return {
            'd': (int, (2, 3), 'Degree of the cyclic fields', 1),
            'count': (int, (1, None), 'Fields in the family', 1),
            'bound': (int, (2, None), 'Scan primes up to this bound', 1),
            'q': (list, int, 'Explicit source primes (else smallest)', 1),
        }

    def run(self):
        d = self.pars['d']
        if self.pars['q']:
            fields = [gaussian_period_polynomial(q, d)
                      for q in self.pars['q']]
        else:
            fields = independent_family(d, self.pars['count'])
        rep = density_scan([K.f for K in fields], self.pars['bound'])
        rows = []
        for K, dens, pred in zip(fields, rep.densities, rep.predicted):
            rows.append([K.q, K.d, ' '.join(map(str, K.f)), K.disc,
                         f'{dens:.6f}', f'{pred:.6f}'])
        return ExperimentOutput(
            self.name, ['q', 'd', 'f', 'disc', 'density', 'predicted'], rows,
            {'union': rep.union, 'predicted_union': rep.predicted_union,
             'independent': rep.independent},
            {'report': rep.to_json(),
             'fields': [K.to_json() for K in fields]})


class CoveringExperiment(Experiment):
    """Covering lattice, reductions and a favorable generating pair."""

    name = 'covering'

    @staticmethod
    def get_default_parameters():
        return {'type': '2A2', 'p': [7, 13, 17], 'support': 2, 'm': 4}

    @staticmethod
    def get_parameters_info():
        return {
            'type': (str, None, 'Form name', 1),
            'p': (list, int, 'Primes to reduce at', 1),
            'support': (int, (1, 3), 'Support of favorable candidates', 1),
            'm': (int, (1, 8), 'Lattice ball radius for the entry bound', 1),
        }

    def run(self):
        L = build_covering(self.pars['type'])
        sl2_triple_in_covering(L)
        rows = []
        for p in self.pars['p']:
            try:
                red = reduce_covering(L, p)
            except (NotInert, PrimeTooSmall) as e:
                self.log.info(f'skipping p={p}: {e}')
                rows.append([p, 0, '', 0])
                continue
            rows.append([p, 1, red.fixed.algebra.dim, 1])
        fav = favorable_pair(L, self.pars['support'])
        growth = lattice_entry_growth(L.algebra, self.pars['m'])
        return ExperimentOutput(
            self.name, ['p', 'inert', 'dim', 'reduction_ok'], rows, {
                'rank': len(L.basis),
                'N': L.N,
                'averaging_factor': L.averaging_factor,
                'det': str(fav.det),
                'bad_primes': fav.bad_primes,
            }, {
                'favorable_pair': {'x': fav.x, 'y': fav.y},
                'entry_growth': growth
            })


def lattice_entry_growth(gL, m_max, S=None):
    """|S^m| and the largest coefficient of S^m in a lattice Lie ring,
    against the bound (|S|^2 N)^(m-1)."""
    if S is None:
        S = [gL.basis(i) for i in range(gL.dim)]
    S = [np.array([int(a) for a in s], dtype=np.int64) for s in S]
    N = max(abs(int(c)) for _, _, _, c in gL.structure_triples())
    B = Ball(gL, S)
    out = []
    for m in range(1, m_max + 1):
        try:
            B.grow_to(m)
        except CutoffExceeded as e:
            LOG.warning(f'lattice_entry_growth(): stopped at {m}: {e}')
            break
        norm = int(np.abs(B.elements(m)).max())
        out.append({'m': m, 'size': B.size(m), 'norm': norm,
                    'bound': (len(S)**2 * N)**(m - 1)})
    return out


class IdentityExperiment(Experiment):
    """The degree 11 two variable identity in sl2 and sl3."""

    name = 'identity'

    @staticmethod
    def get_default_parameters():
        return {'p': 101, 'samples': 10**4, 'seed': 0}

    @staticmethod
    def get_parameters_info():
        return {
            'p': (int, (3, None), 'Prime', 1),
            'samples': (int, (1, None), 'Random samples', 1),
            'seed': (int, (0, None), 'Random seed', 1),
        }

    def run(self):
        p = check_prime(self.pars['p'])
        rows = []
        for kind in ('A1', 'A2'):
            g = chevalley_algebra(RootSystem(kind), PrimeField(p))
            rng = trial_rng(self.pars['seed'], p, 0)
            n = self.pars['samples']
            X = g.ring.random(rng, (4, n, g.dim))
            four = identity_violations(g, *X)
            two = identity_violations(g, *word_substitution(g, X[0], X[1]))
            rows.append([kind, p, n, four, two])
        return ExperimentOutput(
            self.name, ['type', 'p', 'samples', 'four_var', 'two_var'], rows,
            {'sl2_zero': rows[0][3] == 0 and rows[0][4] == 0,
             'sl3_violated': rows[1][4] > 0})


def identity_values(g, x1, x2, x3, x4):
    """[[[x2, x3], [x4, x1]], x1] + [[[x2, x1], [x3, x1]], x4], row-wise."""
    p = g.ring.p
    br = g.bracket_rows
    a = br(br(br(x2, x3), br(x4, x1)), x1)
    b = br(br(br(x2, x1), br(x3, x1)), x4)
    return (a + b) % p


def identity_violations(g, x1, x2, x3, x4):
    return int(identity_values(g, x1, x2, x3, x4).any(axis=1).sum())


def word_substitution(g, X, Y):
    """x_i = [X, Y, ..., Y] with i - 1 copies of Y, row-wise."""
    out = [X]
    for _ in range(3):
        out.append(g.bracket_rows(out[-1], Y))
    return out


EXPERIMENTS = {
    cls.name: cls
    for cls in (ConstructExperiment, DiameterExperiment, LineGrowthExperiment,
                TowersExperiment, ExtremalExperiment, RandomPairExperiment,
                WittExperiment, ChebotarevExperiment, CoveringExperiment,
                IdentityExperiment)
}


def get_default_parameters():
    return {k: v.get_default_parameters() for k, v in EXPERIMENTS.items()}


def get_parameters_info():
    return {k: v.get_parameters_info() for k, v in EXPERIMENTS.items()}


def write_csv(out, f):
    w = csv.writer(f, lineterminator='\n')
    w.writerow(out.columns)
    for r in out.rows:
        w.writerow(['' if c is None else c for c in r])


def write_json(out, f, config=None):
    doc = {'experiment': out.name, 'summary': out.summary, 'ok': out.ok}
    if config is not None:
        doc['config'] = asdict(config)
    if out.document is not None:
        doc['document'] = out.document
    json.dump(doc, f, sort_keys=True, indent=2, default=_json_default)
    f.write('\n')


def write_h5(out, fname, config=None):
    prefix = f'liegrowth/{out.name}/'
    with File(fname, 'w') as f:
        write_h5_header(f)
        h5_store_table(f, prefix + 'records/', out.columns, out.rows)
        h5_store_str(f, prefix + 'summary',
                     json.dumps(out.summary, sort_keys=True,
                                default=_json_default))
        if config is not None:
            h5_store_str(f, prefix + 'config',
                         json.dumps(asdict(config), sort_keys=True))


def _json_default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f'{type(o)} is not JSON serialisable')


def run_experiment(name, pars={}):
    exp = EXPERIMENTS[name](pars)
    t1 = time()
    out = exp.run()
    LOG.info(f'run_experiment(): {name} {time() - t1:.1f}')
    if not out.ok:
        LOG.error(f'{name}: verification failed')
    return exp.config(), out


__all__ = [
    'EXPERIMENTS', 'run_experiment', 'write_csv', 'write_json', 'write_h5',
    'get_default_parameters', 'get_parameters_info'
]
