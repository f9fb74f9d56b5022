"""
Record of reduction rule applications.
"""
from dataclasses import dataclass
from typing import List, Optional, Tuple

ADD = "add"
DELETE = "delete"
PERMANENT = "permanent"
FORBID = "forbid"
CAP_DELTA = "cap-delta"
REMOVE_CLUSTER = "remove-cluster"

ACTIONS = (ADD, DELETE, PERMANENT, FORBID, CAP_DELTA, REMOVE_CLUSTER)


@dataclass(frozen=True)
class TraceEntry:
    rule: int
    target: Tuple[int, ...]
    action: str
    value: Optional[int] = None

    def __str__(self) -> str:
        text = f"rule{self.rule} {self.action} {' '.join(map(str, self.target))}"
        return text if self.value is None else f"{text} -> {self.value}"


RuleTrace = List[TraceEntry]
