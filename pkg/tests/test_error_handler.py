import pytest
from unittest.mock import MagicMock, patch

from qdiv.error_handler import exception_logger
from qdiv.exceptions import InputError, NoLiftingFound


@exception_logger(catch=False)
def reraised_error(arg):
    raise Exception(arg)


@exception_logger()
def caught_error(arg):
    raise Exception(arg)


@exception_logger()
def caught_input_error(arg):
    raise InputError(source=arg, reason='no such builtin')


@exception_logger(exception_class=InputError)
def uncaught_error(arg):
    raise NoLiftingFound(arg)


def test_re_raise():
    with pytest.raises(Exception, match='foo'):
        reraised_error('foo')


def test_catch():
    mock_logger = MagicMock()
    with patch('qdiv.error_handler.logger.critical', mock_logger):
        assert caught_error('boo') == 1

    mock_logger.assert_called_once_with('boo')


def test_catch_returns_exit_code():
    mock_logger = MagicMock()
    with patch('qdiv.error_handler.logger.critical', mock_logger):
        assert caught_input_error('cross9') == 2

    mock_logger.assert_called_once_with(
        'Cannot load input from cross9: no such builtin')


def test_other_exceptions_pass_through():
    with pytest.raises(NoLiftingFound) as err_info:
        uncaught_error('degree 5')

    assert err_info.value.exit_code == 3
