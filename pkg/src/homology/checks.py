"""Identity bookkeeping shared by the validators."""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List


@dataclass
class IdentityReport:
    """Outcome of one identity family: how many instances were checked, which failed."""

    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)
    max_failures: int = 20

    @property
    def passed(self) -> bool:
        return not self.failures and self.checked > 0

    def record(self, ok: bool, witness: str) -> None:
        self.checked += 1
        if not ok and len(self.failures) < self.max_failures:
            self.failures.append(witness)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data.pop("max_failures")
        data["passed"] = self.passed
        return data
