"""Default corpus of problems and the regression values pinned against it."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .ideals import monomials_of_degree
from .parser import ProblemSpec, format_problem, parse_problem
from .poly import QQ, Polynomial, Ring


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    spec: ProblemSpec
    note: str = ""


def random_ideal(seed, variables, ngens=2, min_ord=2, max_deg=4, max_terms=3, coeff_bound=3):
    """Pseudo-random ideal whose generators mix terms of different degrees so
    that their leading forms do not already form a standard basis."""
    rng = random.Random(seed)
    ring = Ring(tuple(variables), QQ)
    s = ring.nvars
    gens = []
    while len(gens) < ngens:
        terms = {}
        low = rng.randint(min_ord, max_deg - 1)
        degrees = [low] + [rng.randint(low, max_deg) for _ in range(rng.randint(1, max_terms - 1))]
        for d in degrees:
            exp = rng.choice(monomials_of_degree(s, d))
            coeff = rng.choice([c for c in range(-coeff_bound, coeff_bound + 1) if c])
            terms[exp] = terms.get(exp, 0) + coeff
        f = Polynomial(ring, terms)
        if f and f not in gens:
            gens.append(f)
    return ProblemSpec(ring, gens).validate()


_TEXTS = {
    "worked_example": "ring(x, y)\nfield Q\nI = [x^2, y^3 - x*y]\n",
    "principal_x2": "ring(x)\nfield Q\nI = [x^2]\na = [x]\n",
    "maximal_ideal": "ring(x, y)\nfield Q\nI = [x, y]\n",
    "monomial_control": "ring(x, y)\nfield Q\nI = [x^2, x*y, y^5]\n",
}

# name -> (seed, variables, number of generators); other parameters default
RANDOM_SEEDS = {
    "random_2var_s6": (6, ("x", "y"), 2),
    "random_3var_s2": (2, ("x", "y", "z"), 3),
}

# Values computed once by the experiments and frozen as regression targets:
# lambda_hat of growth_experiment(n_max=5) and lambda_min of
# artin_rees_experiment(m_max=3, n_pad=3, lambda_bound=8) with the entry's a.
REGRESSION = {
    "worked_example": {"lambda_hat_nmax5": 5, "artin_rees_lambda_min": 5},
    "principal_x2": {"lambda_hat_nmax5": 2, "artin_rees_lambda_min": 2},
    "maximal_ideal": {"lambda_hat_nmax5": 1, "artin_rees_lambda_min": 1},
    "monomial_control": {"lambda_hat_nmax5": 5, "artin_rees_lambda_min": 5},
    "random_2var_s6": {"lambda_hat_nmax5": 3, "artin_rees_lambda_min": 2},
    # the Artin-Rees run takes about two minutes here; it is not re-run by the fast suite
    "random_3var_s2": {"lambda_hat_nmax5": 4, "artin_rees_lambda_min": 3},
}


def default_corpus():
    entries = [CorpusEntry(name, parse_problem(text)) for name, text in _TEXTS.items()]
    for name, (seed, variables, ngens) in RANDOM_SEEDS.items():
        spec = random_ideal(seed, variables, ngens)
        entries.append(CorpusEntry(name, spec, f"random_ideal(seed={seed}, ngens={ngens})"))
    return entries


def corpus_entry(name):
    for entry in default_corpus():
        if entry.name == name:
            return entry
    raise KeyError(name)


def write_corpus(directory):
    """Write every corpus problem as ``<name>.sbl`` into ``directory``."""
    from pathlib import Path

    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for entry in default_corpus():
        path = out / f"{entry.name}.sbl"
        header = f"# {entry.note}\n" if entry.note else ""
        path.write_text(header + format_problem(entry.spec), encoding="utf-8")
        paths.append(path)
    return paths
