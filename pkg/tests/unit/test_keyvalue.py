"""
Unit tests for the key=value reader.
"""

import pytest

from src.utils.keyvalue import KeyValueError, format_key_values, parse_bool, parse_key_values, \
    strip_comment


class TestKeyValue:
    """Test suite for key=value parsing."""

    def test_comments_and_blank_lines_ignored(self):
        text = "# header\n\nfloors = 12   # twelve\n  elevators=3\n"
        assert parse_key_values(text) == {'floors': '12', 'elevators': '3'}

    def test_value_may_contain_equals(self):
        assert parse_key_values("expr = a=b\n") == {'expr': 'a=b'}

    def test_duplicate_key_reports_line(self):
        with pytest.raises(KeyValueError) as exc:
            parse_key_values("a = 1\n\na = 2\n")
        assert exc.value.line_number == 3
        assert "duplicate" in str(exc.value)

    def test_missing_equals(self):
        with pytest.raises(KeyValueError) as exc:
            parse_key_values("a = 1\njust text\n")
        assert exc.value.line_number == 2

    def test_empty_key(self):
        with pytest.raises(KeyValueError):
            parse_key_values(" = 5\n")

    def test_strip_comment(self):
        assert strip_comment("x = 1 # note") == "x = 1"
        assert strip_comment("# only") == ""

    @pytest.mark.parametrize("raw,expected", [
        ("true", True), ("TRUE", True), ("1", True), ("yes", True),
        ("false", False), ("0", False), ("No", False),
    ])
    def test_parse_bool(self, raw, expected):
        assert parse_bool(raw) is expected

    def test_parse_bool_rejects_other(self):
        with pytest.raises(ValueError):
            parse_bool("maybe")

    def test_format_key_values(self):
        text = format_key_values({'a': True, 'b': 0.1, 'c': 3, 'd': 'lobby'})
        assert text == "a = true\nb = 0.1\nc = 3\nd = lobby\n"
        assert parse_key_values(text) == {'a': 'true', 'b': '0.1', 'c': '3', 'd': 'lobby'}
