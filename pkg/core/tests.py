from django.test import SimpleTestCase

from core.exceptions import MissingPartner, NotAdjacent, NotTorusPage, ParseError, UnknownLabel
from core.types import CODE_DATA_ERROR, CODE_INTERNAL, CODE_INVALID, CODE_NOT_APPLICABLE, CODE_OK, exit_code_for


class ExitCodeTests(SimpleTestCase):
    def test_codes_map_to_exit_statuses(self):
        expected = {CODE_OK: 0, CODE_DATA_ERROR: 2, CODE_INVALID: 3, CODE_NOT_APPLICABLE: 4, CODE_INTERNAL: 1}
        for code, status in expected.items():
            self.assertEqual(exit_code_for({"code": code, "message": "", "data": None}), status)

    def test_unknown_code_is_internal(self):
        self.assertEqual(exit_code_for({"code": 418, "message": "", "data": None}), 1)


class ExceptionTests(SimpleTestCase):
    def test_codes_per_class(self):
        self.assertEqual(ParseError(3, "x").code, CODE_DATA_ERROR)
        self.assertEqual(MissingPartner("A").code, CODE_INVALID)
        self.assertEqual(NotTorusPage("x").code, CODE_NOT_APPLICABLE)

    def test_parse_error_message_carries_line(self):
        self.assertIn("第 3 行", ParseError(3, "坏了").message)
        self.assertNotIn("行", ParseError(None, "坏了").message)

    def test_event_index_is_attached(self):
        exc = NotAdjacent("不相邻").at(4)
        self.assertEqual(exc.event_index, 4)
        self.assertEqual(exc.to_data()["event_index"], "4")
        self.assertEqual(exc.to_data()["error"], "NotAdjacent")

    def test_unknown_label_is_an_event_error(self):
        self.assertEqual(UnknownLabel("Z+").at(0).event_index, 0)
