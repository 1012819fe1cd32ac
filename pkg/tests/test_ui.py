import io
import unittest

from src import ui


class FakeTerminal(io.StringIO):
    def isatty(self):
        return True


class UITest(unittest.TestCase):
    def test_fmt_color(self):
        self.assertEqual(ui.fmt_color(ui.RED, "fail"), "\033[31mfail\033[0m")
        self.assertEqual(ui.fmt_color(ui.GREEN, "ok", newline=True), ui.GREEN + "ok" + ui.ENDC + "\n")

    def test_div(self):
        self.assertEqual(ui.div(5), "-----")
        self.assertEqual(ui.div(0), "")
        self.assertEqual(len(ui.div()), ui.columns)

    def test_header(self):
        self.assertEqual(ui.header("ab", 10), "--[ ab ]--")
        self.assertEqual(ui.header("abc", 10), "-[ abc ]--")
        for width in (20, 21, 40):
            self.assertEqual(len(ui.header("chi", width)), width)

    def test_use_color(self):
        self.assertFalse(ui.use_color(io.StringIO()))
        self.assertTrue(ui.use_color(FakeTerminal()))
