"""
Positive 3-CNF formulas where every variable occurs in at most four clauses.
"""
from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

MAX_OCCURRENCES = 4


class Formula(BaseModel):
    model_config = ConfigDict(frozen=True)

    num_vars: int = Field(..., ge=0, description="Variables are numbered 0..num_vars-1")
    clauses: Tuple[Tuple[int, int, int], ...] = Field(default=(), description="Each clause names three distinct variables")

    @field_validator("clauses")
    @classmethod
    def _distinct_variables(cls, clauses):
        for index, clause in enumerate(clauses):
            if len(set(clause)) != 3:
                raise ValueError(f"clause {index} repeats a variable: {clause}")
        return clauses

    @model_validator(mode="after")
    def _bounded_occurrences(self):
        for index, clause in enumerate(self.clauses):
            for var in clause:
                if not 0 <= var < self.num_vars:
                    raise ValueError(f"clause {index} names variable {var} outside 0..{self.num_vars - 1}")
        for var, places in self.occurrences().items():
            if len(places) > MAX_OCCURRENCES:
                raise ValueError(f"variable {var} occurs in {len(places)} clauses, at most {MAX_OCCURRENCES} allowed")
        return self

    def occurrences(self) -> Dict[int, List[int]]:
        """Clause indices per variable, in clause order."""
        places: Dict[int, List[int]] = {var: [] for var in range(self.num_vars)}
        for index, clause in enumerate(self.clauses):
            for var in clause:
                places[var].append(index)
        return places

    def satisfied_by(self, assignment) -> bool:
        """True when every clause has exactly one true variable."""
        return all(sum(bool(assignment[v]) for v in clause) == 1 for clause in self.clauses)
