"""
Tests for the instance and solution file formats and the file reader
"""
import os
import tempfile

from core.instance import Edit
from core.solution import Solution, Verdict
from tools.file_operations import FileOperations
from utils.file_handler import FileHandler, InstanceFile, ParseError

SAMPLE = """c path on four vertices
p ce 4 3
c budgets
a 2 0
d 1 2
e 0 1
e 2 1

e 2 3
"""


def test_validate_file_type():
    """Test file type validation"""
    print("Testing file type validation...")
    assert FileHandler.validate_file_type("graph.ce") == "instance"
    assert FileHandler.validate_file_type("graph.GR") == "instance"
    assert FileHandler.validate_file_type("graph.txt") == "instance"
    assert FileHandler.validate_file_type("graph.sol") == "solution"
    assert FileHandler.validate_file_type("graph.out") == "solution"
    try:
        FileHandler.validate_file_type("graph.pdf")
        assert False, "Should have raised ValueError"
    except ValueError as e:
        assert "not supported" in str(e)
    print("✓ File type validation works!")


def test_parse_instance():
    print("\nTesting instance parsing...")
    parsed = FileHandler.parse_instance(SAMPLE)
    assert parsed.n == 4
    assert parsed.edges == [(0, 1), (1, 2), (2, 3)]
    assert parsed.alpha == {2: 0}
    assert parsed.delta == {1: 2}
    assert parsed.comments == ["budgets"]

    empty = FileHandler.parse_instance("p ce 0 0\n")
    assert empty.n == 0 and empty.edges == []
    print("✓ Instance parsing works!")


def test_parse_instance_errors():
    """Every malformed line is reported with its line number"""
    print("\nTesting instance parse errors...")
    cases = [
        ("e 0 1\n", 1, "header"),
        ("p ce 3\n", 1, "header"),
        ("p ce 3 1\ne 0 3\n", 2, "outside"),
        ("p ce 3 1\ne 1 1\n", 2, "self-loop"),
        ("p ce 3 2\ne 0 1\ne 1 0\n", 3, "duplicate"),
        ("p ce 3 2\ne 0 1\n", 1, "declares 2"),
        ("p ce 3 0\nx 1 2\n", 2, "unknown"),
        ("p ce 3 0\na 0 -1\n", 2, "non-negative"),
        ("p ce 3 0\nd 0 1\nd 0 2\n", 3, "second"),
        ("p ce 3 0\np ce 3 0\n", 2, "duplicate header"),
        ("c only a comment\n", 1, "header"),
    ]
    for text, line_number, message in cases:
        try:
            FileHandler.parse_instance(text)
            assert False, f"Should have rejected {text!r}"
        except ParseError as e:
            assert e.line_number == line_number, f"{text!r}: line {e.line_number}"
            assert message in str(e), f"{text!r}: {e}"
    print("✓ Parse errors carry line numbers!")


def test_serialize_instance_is_canonical():
    parsed = FileHandler.parse_instance(SAMPLE)
    text = FileHandler.serialize_instance(parsed)
    assert text == "p ce 4 3\na 2 0\nd 1 2\ne 0 1\ne 1 2\ne 2 3\n"
    assert FileHandler.serialize_instance(FileHandler.parse_instance(text)) == text

    commented = FileHandler.serialize_instance(InstanceFile(n=2, edges=[(1, 0)], comments=["hello"]), with_comments=True)
    assert commented == "p ce 2 1\nc hello\ne 0 1\n"


def test_solution_text():
    print("\nTesting solution files...")
    solution = Solution.yes([Edit.delete(1, 2)], [(2,), (0, 1)])
    text = FileHandler.serialize_solution(solution, ["mode branch"])
    assert text == "s yes 1\ndel 1 2\nk 0 1\nk 2\nc mode branch\n"

    parsed = FileHandler.parse_solution(text)
    assert parsed.verdict is Verdict.YES
    assert parsed.edits == [Edit.delete(1, 2)]
    assert parsed.clusters == [(0, 1), (2,)]
    assert parsed.comments == ["mode branch"]

    assert FileHandler.serialize_solution(Solution.no("rule9")) == "s no rule9\n"
    parsed = FileHandler.parse_solution("s no rule9\n")
    assert parsed.verdict is Verdict.NO
    assert parsed.reason == "rule9"
    print("✓ Solution files work!")


def test_parse_solution_errors():
    cases = [
        ("del 0 1\n", 1, "status"),
        ("s yes 2\ndel 0 1\n", 1, "declares 2"),
        ("s yes 1\nadd 0 0\n", 2, "differ"),
        ("s yes 0\nk\n", 2, "empty cluster"),
        ("s no rule1\ndel 0 1\n", 2, "no further"),
        ("s yes 1\nmove 0 1\n", 2, "unknown"),
        ("", 1, "status"),
    ]
    for text, line_number, message in cases:
        try:
            FileHandler.parse_solution(text)
            assert False, f"Should have rejected {text!r}"
        except ParseError as e:
            assert e.line_number == line_number, f"{text!r}: line {e.line_number}"
            assert message in str(e), f"{text!r}: {e}"


def test_file_operations():
    """Reads are type-checked, size-limited and report errors as status dicts"""
    print("\nTesting file operations...")
    with tempfile.TemporaryDirectory() as root:
        file_ops = FileOperations(root_dir=root, max_file_size_mb=1)
        assert not hasattr(file_ops, "write_file")
        os.makedirs(os.path.join(root, "nested"))
        with open(os.path.join(root, "nested", "graph.ce"), "w", encoding="utf-8") as f:
            f.write(SAMPLE)

        result = file_ops.read_file("nested/graph.ce")
        assert result["status"] == "success"
        assert result["kind"] == "instance"
        assert FileHandler.parse_instance(result["content"]).n == 4

        result = file_ops.read_file("graph.pdf")
        assert result["status"] == "error"
        assert "not supported" in result["message"]

        result = file_ops.read_file("missing.ce")
        assert result["status"] == "error"
        assert "not found" in result["message"]

        with open(os.path.join(root, "big.ce"), "w", encoding="utf-8") as f:
            f.write("c " + "x" * (1024 * 1024 + 10) + "\n")
        result = file_ops.read_file("big.ce")
        assert result["status"] == "error"
        assert "too large" in result["message"]

        with open(os.path.join(root, "blob.ce"), "wb") as f:
            f.write(b"\xff\xfe\x00\x81")
        result = file_ops.read_file("blob.ce")
        assert result["status"] == "error"
        assert "binary" in result["message"]
    print("✓ File operations work!")


def main():
    """Run all tests."""
    print("=" * 60)
    print("File Handler Tests")
    print("=" * 60)

    try:
        test_validate_file_type()
        test_parse_instance()
        test_parse_instance_errors()
        test_serialize_instance_is_canonical()
        test_solution_text()
        test_parse_solution_errors()
        test_file_operations()

        print("\n" + "=" * 60)
        print("✅ All tests passed!")
        print("=" * 60)
    except Exception as e:
        print(f"\n❌ Test failed: {e}")
        import traceback
        traceback.print_exc()
        return 1

    return 0


if __name__ == "__main__":
    exit(main())
