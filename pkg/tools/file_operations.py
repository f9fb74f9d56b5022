from pathlib import Path
from typing import Any, Dict

from pydantic import BaseModel, Field, field_validator
import logging

from utils.file_handler import FileHandler

logger = logging.getLogger(__name__)

BYTES_PER_MB = 1024 * 1024


class GraphFileRequest(BaseModel):
    """A read of one instance or solution file."""
    file_path: str = Field(..., description="Instance or solution file, relative to the root directory")

    @field_validator("file_path")
    @classmethod
    def path_not_blank(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("file path is empty")
        return value

    @property
    def kind(self) -> str:
        return FileHandler.validate_file_type(self.file_path)


class FileOperations:
    """Size-limited access to instance and solution files.

    Every call returns a status dictionary instead of raising, so the CLI
    can turn a failure into a single usage-error line.
    """

    def __init__(self, root_dir: str = ".", max_file_size_mb: int = 5):
        self.root = Path(root_dir).resolve()
        self.max_file_size = max_file_size_mb * BYTES_PER_MB

    def _resolve(self, file_path: str) -> Path:
        # absolute paths replace the root
        return self.root / file_path

    def read_file(self, file_path: str) -> Dict[str, Any]:
        try:
            request = GraphFileRequest(file_path=file_path)
            kind = request.kind
        except ValueError as e:
            return {"status": "error", "message": f"{file_path}: {e}"}

        target = self._resolve(request.file_path)
        if not target.is_file():
            return {"status": "error", "message": f"File {file_path} not found"}

        size = target.stat().st_size
        if size > self.max_file_size:
            return {
                "status": "error",
                "message": (
                    f"File {file_path} is too large ({size / BYTES_PER_MB:.2f}MB); "
                    f"the limit is {self.max_file_size / BYTES_PER_MB:g}MB"
                ),
            }

        try:
            content = target.read_text(encoding="utf-8")
        except UnicodeDecodeError:
            return {"status": "error", "message": f"File {file_path} looks binary, not a {kind} file"}
        except OSError as e:
            return {"status": "error", "message": f"{file_path}: {e}"}

        logger.debug("Loaded %s file %s (%d bytes)", kind, target, size)
        return {"status": "success", "kind": kind, "content": content}
