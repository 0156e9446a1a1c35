"""Check records and suite reports (JSON is the contract, markdown mirrors it)."""

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    claim: str
    passed: bool
    data: dict = field(default_factory=dict)

    def to_dict(self):
        return {"name": self.name, "claim": self.claim, "passed": bool(self.passed), "data": self.data}


@dataclass
class SuiteReport:
    suite: str
    seed: int
    samples: int
    checks: list = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)

    def add(self, name, claim, passed, **data):
        self.checks.append(Check(name, claim, bool(passed), data))
        return passed

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        return {
            "suite": self.suite,
            "seed": self.seed,
            "samples": self.samples,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_markdown(self):
        lines = [f"## {self.suite}", "", f"seed {self.seed}, samples {self.samples}, "
                 f"{'PASS' if self.passed else 'FAIL'}", "", "| check | claim | result |", "|---|---|---|"]
        for c in self.checks:
            lines.append(f"| {c.name} | {c.claim} | {'pass' if c.passed else 'FAIL'} |")
        return "\n".join(lines) + "\n"

    def claim_map(self):
        return [(c.name, c.claim) for c in self.checks]
