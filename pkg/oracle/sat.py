"""
Exhaustive 1-in-3 satisfiability check for small positive formulas.
"""
from itertools import product
from typing import List, Optional

from generators.formula import Formula

SAT_MAX_VARIABLES = 20


def sat_one_in_three(formula: Formula) -> Optional[List[bool]]:
    """First assignment (True tried before False, variable 0 most significant) with
    exactly one true variable per clause, or None."""
    if formula.num_vars > SAT_MAX_VARIABLES:
        raise ValueError(f"Exhaustive check supports at most {SAT_MAX_VARIABLES} variables, got {formula.num_vars}")
    for values in product((True, False), repeat=formula.num_vars):
        if formula.satisfied_by(values):
            return list(values)
    return None
