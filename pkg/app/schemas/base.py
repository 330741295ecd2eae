"""
Base Pydantic schemas.
"""
from typing import Any, ClassVar

from pydantic import BaseModel, ConfigDict


class BaseSchema(BaseModel):
    """Base schema with common configuration."""

    model_config = ConfigDict(
        from_attributes=True,
        populate_by_name=True,
        use_enum_values=True,
        str_strip_whitespace=True,
        frozen=True
    )


class RecordSchema(BaseSchema):
    """
    A row of CLI output.

    Field order is the CSV column order; big integers stay exact in both
    CSV and JSON.
    """

    columns: ClassVar[tuple[str, ...]] = ()

    @classmethod
    def header(cls) -> list[str]:
        """Get CSV column names."""
        return list(cls.columns or cls.model_fields)

    def cells(self) -> list[Any]:
        """Get row values in column order."""
        data = self.model_dump(mode="json")
        return ["" if data[name] is None else data[name] for name in self.header()]
