"""
Instance and solution file formats.

Instance files are line oriented:

    c <comment>
    p ce <n> <m>        header, first non-comment line
    a <v> <alpha>       per-vertex addition budget override
    d <v> <delta>       per-vertex deletion budget override
    e <u> <v>           edge, exactly m of them

Solution files:

    s yes <N> | s no <reason>
    del <u> <v> | add <u> <v>      N edit lines
    k <v1> <v2> ...                one line per cluster
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from core.instance import Edit, EditKind, Pair
from core.solution import Solution, Verdict


class ParseError(ValueError):
    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
        self.message = message


@dataclass
class InstanceFile:
    n: int
    edges: List[Pair] = field(default_factory=list)
    alpha: Dict[int, int] = field(default_factory=dict)
    delta: Dict[int, int] = field(default_factory=dict)
    comments: List[str] = field(default_factory=list)


@dataclass
class SolutionFile:
    verdict: Verdict
    edits: List[Edit] = field(default_factory=list)
    clusters: List[Tuple[int, ...]] = field(default_factory=list)
    reason: Optional[str] = None
    comments: List[str] = field(default_factory=list)


def _int(token: str, line_number: int) -> int:
    if not token.isdecimal():
        raise ParseError(line_number, f"expected a non-negative integer, got {token!r}")
    return int(token)


def _vertex(token: str, n: int, line_number: int) -> int:
    v = _int(token, line_number)
    if v >= n:
        raise ParseError(line_number, f"vertex {v} outside 0..{n - 1}")
    return v


class FileHandler:
    """Reads and writes the instance and solution text formats"""

    INSTANCE_EXTENSIONS = {'.ce', '.gr', '.txt'}
    SOLUTION_EXTENSIONS = {'.sol', '.out'}

    @staticmethod
    def validate_file_type(filename: str) -> str:
        ext = Path(filename).suffix.lower()
        if ext in FileHandler.INSTANCE_EXTENSIONS:
            return 'instance'
        elif ext in FileHandler.SOLUTION_EXTENSIONS:
            return 'solution'
        else:
            raise ValueError(f"File type {ext} is not supported")

    @staticmethod
    def parse_instance(text: str) -> InstanceFile:
        parsed: Optional[InstanceFile] = None
        declared_edges = 0
        header_line = 0
        seen = set()
        for line_number, raw in enumerate(text.split("\n"), start=1):
            tokens = raw.split()
            if not tokens:
                continue
            tag = tokens[0]
            if tag == "c":
                comment = raw.strip()[1:].strip()
                if parsed is not None:
                    parsed.comments.append(comment)
                continue
            if parsed is None:
                if tag != "p":
                    raise ParseError(line_number, "missing 'p ce n m' header")
                if len(tokens) != 4 or tokens[1] != "ce":
                    raise ParseError(line_number, "header must read 'p ce <n> <m>'")
                parsed = InstanceFile(n=_int(tokens[2], line_number))
                declared_edges = _int(tokens[3], line_number)
                header_line = line_number
                continue
            if tag == "p":
                raise ParseError(line_number, "duplicate header")
            if tag == "e":
                if len(tokens) != 3:
                    raise ParseError(line_number, "edge line must read 'e <u> <v>'")
                u = _vertex(tokens[1], parsed.n, line_number)
                v = _vertex(tokens[2], parsed.n, line_number)
                if u == v:
                    raise ParseError(line_number, f"self-loop at vertex {u}")
                pair = (min(u, v), max(u, v))
                if pair in seen:
                    raise ParseError(line_number, f"duplicate edge {pair[0]}-{pair[1]}")
                seen.add(pair)
                parsed.edges.append(pair)
            elif tag in ("a", "d"):
                if len(tokens) != 3:
                    raise ParseError(line_number, f"budget line must read '{tag} <v> <value>'")
                v = _vertex(tokens[1], parsed.n, line_number)
                table = parsed.alpha if tag == "a" else parsed.delta
                if v in table:
                    raise ParseError(line_number, f"second '{tag}' line for vertex {v}")
                table[v] = _int(tokens[2], line_number)
            else:
                raise ParseError(line_number, f"unknown line type {tag!r}")

        if parsed is None:
            raise ParseError(1, "missing 'p ce n m' header")
        if len(parsed.edges) != declared_edges:
            raise ParseError(header_line, f"header declares {declared_edges} edges, found {len(parsed.edges)}")
        return parsed

    @staticmethod
    def serialize_instance(instance: InstanceFile, with_comments: bool = False) -> str:
        """Canonical text: header, comments if asked for, budgets and edges in ascending order."""
        lines = [f"p ce {instance.n} {len(instance.edges)}"]
        if with_comments:
            lines.extend(f"c {comment}" for comment in instance.comments)
        lines.extend(f"a {v} {x}" for v, x in sorted(instance.alpha.items()))
        lines.extend(f"d {v} {x}" for v, x in sorted(instance.delta.items()))
        lines.extend(f"e {u} {v}" for u, v in sorted((min(e), max(e)) for e in instance.edges))
        return "\n".join(lines) + "\n"

    @staticmethod
    def serialize_solution(solution: Solution, comments: Optional[List[str]] = None) -> str:
        if solution.verdict is Verdict.NO:
            lines = [f"s no {solution.no_reason}"]
        else:
            lines = [f"s yes {len(solution.script)}"]
            lines.extend(str(edit) for edit in solution.script)
            for cluster in sorted(tuple(sorted(c)) for c in solution.clusters):
                lines.append("k " + " ".join(map(str, cluster)))
        lines.extend(f"c {comment}" for comment in comments or [])
        return "\n".join(lines) + "\n"

    @staticmethod
    def parse_solution(text: str) -> SolutionFile:
        parsed: Optional[SolutionFile] = None
        declared = 0
        status_line = 0
        for line_number, raw in enumerate(text.split("\n"), start=1):
            tokens = raw.split()
            if not tokens:
                continue
            tag = tokens[0]
            if tag == "c":
                if parsed is not None:
                    parsed.comments.append(raw.strip()[1:].strip())
                continue
            if parsed is None:
                if tag != "s" or len(tokens) < 2 or tokens[1] not in ("yes", "no"):
                    raise ParseError(line_number, "missing 's yes N' or 's no <reason>' status line")
                status_line = line_number
                if tokens[1] == "no":
                    parsed = SolutionFile(Verdict.NO, reason=" ".join(tokens[2:]) or "unspecified")
                else:
                    if len(tokens) != 3:
                        raise ParseError(line_number, "status line must read 's yes <N>'")
                    declared = _int(tokens[2], line_number)
                    parsed = SolutionFile(Verdict.YES)
                continue
            if parsed.verdict is Verdict.NO:
                raise ParseError(line_number, "a 'no' solution carries no further lines")
            if tag in ("add", "del"):
                if len(tokens) != 3:
                    raise ParseError(line_number, f"edit line must read '{tag} <u> <v>'")
                u, v = _int(tokens[1], line_number), _int(tokens[2], line_number)
                if u == v:
                    raise ParseError(line_number, f"edit endpoints must differ, got {u} twice")
                parsed.edits.append(Edit(EditKind(tag), u, v))
            elif tag == "k":
                members = tuple(sorted(_int(t, line_number) for t in tokens[1:]))
                if not members:
                    raise ParseError(line_number, "empty cluster line")
                parsed.clusters.append(members)
            else:
                raise ParseError(line_number, f"unknown line type {tag!r}")

        if parsed is None:
            raise ParseError(1, "missing status line")
        if parsed.verdict is Verdict.YES and len(parsed.edits) != declared:
            raise ParseError(status_line, f"status line declares {declared} edits, found {len(parsed.edits)}")
        return parsed
