"""
Unit tests for the logging setup shared by the CLI and the test session
"""

import logging

import colorlog

from src.utils import setup_logging


class TestSetupLogging:
    """Test suite for setup_logging."""

    def test_single_colored_console_handler(self):
        setup_logging('WARNING')
        setup_logging('DEBUG')

        root = logging.getLogger()
        assert root.level == logging.DEBUG
        assert len(root.handlers) == 1
        assert isinstance(root.handlers[0].formatter, colorlog.ColoredFormatter)

    def test_unknown_level_falls_back_to_info(self):
        setup_logging('CHATTY')
        assert logging.getLogger().level == logging.INFO

    def test_log_file(self, tmp_path):
        log_file = tmp_path / 'logs' / 'repair.log'
        setup_logging('INFO', str(log_file))
        logging.getLogger('src.repair_engine').info("[OK] Archive updated")

        root = logging.getLogger()
        for handler in root.handlers:
            handler.flush()
        text = log_file.read_text(encoding='utf-8')
        for handler in list(root.handlers):
            handler.close()
            root.removeHandler(handler)

        assert "[OK] Archive updated" in text
        assert "[src.repair_engine:" in text
