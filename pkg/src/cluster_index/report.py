"""Pass/fail reports shared by the window checks and the oracle suites."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field, SerializerFunctionWrapHandler, model_serializer

# Extra keys describing how a check was run; merging keeps the first value.
SETTING_KEYS = frozenset({"window"})


class OracleReport(BaseModel):
    """Outcome of one windowed check.

    ``failures`` are logic failures with witnesses, ``alarms`` are soundness
    alarms: a check that passed on a window and failed on an enlarged one.
    The JSON record names the check ``check`` and inlines ``extra``.
    """

    name: str = Field(serialization_alias="check")
    passed: bool = True
    checked: int = 0
    failures: list[str] = Field(default_factory=list)
    alarms: list[str] = Field(default_factory=list)
    extra: dict[str, Any] = Field(default_factory=dict)

    def fail(self, message: str) -> None:
        self.passed = False
        self.failures.append(message)

    def alarm(self, message: str) -> None:
        self.alarms.append(message)

    def tick(self, count: int = 1) -> None:
        self.checked += count

    @property
    def first_failure(self) -> str | None:
        return self.failures[0] if self.failures else None

    def merge(self, other: OracleReport, name: str | None = None) -> OracleReport:
        """Combine two reports; counters add up and numeric extra keys other than settings are summed."""
        extra = dict(self.extra)
        for key, value in other.extra.items():
            summable = isinstance(value, int) and isinstance(extra.get(key), int)
            if summable and key not in SETTING_KEYS:
                extra[key] += value
            else:
                extra.setdefault(key, value)
        return OracleReport(
            name=name or self.name,
            passed=self.passed and other.passed,
            checked=self.checked + other.checked,
            failures=self.failures + other.failures,
            alarms=self.alarms + other.alarms,
            extra=extra,
        )

    @model_serializer(mode="wrap")
    def flatten_extra(self, handler: SerializerFunctionWrapHandler) -> dict[str, Any]:
        record = handler(self)
        record.update(record.pop("extra", {}))
        return record

    def to_record(self) -> dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True)

    def to_json_lines(self) -> str:
        return self.model_dump_json(by_alias=True)
