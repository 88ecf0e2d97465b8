#include "scholarmeter/errors.hpp"
#include "scholarmeter/text.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace scholarmeter;
using namespace scholarmeter::text;

TEST(Text, AuthorNormalizationFoldsSpellings) {
    EXPECT_EQ(normalize_author("Keller, Anna M."), "keller, a.");
    EXPECT_EQ(normalize_author("KELLER, A."), "keller, a.");
    EXPECT_EQ(normalize_author("Anna Keller"), "keller, a.");
    EXPECT_EQ(normalize_author("Müller, Jürgen K."), "muller, j.");
    EXPECT_EQ(normalize_author("Novák, P."), "novak, p.");
    EXPECT_NE(normalize_author("Keller, B."), normalize_author("Keller, A."));
}

TEST(Text, StripDiacritics) {
    EXPECT_EQ(strip_diacritics("Ångström"), "Angstrom");
    EXPECT_EQ(strip_diacritics("Łódź"), "Lodz");
    // e + combining acute accent
    EXPECT_EQ(strip_diacritics("Jose\xCC\x81"), "Jose");
    EXPECT_EQ(strip_diacritics("plain"), "plain");
}

TEST(Text, TitleNormalizationIgnoresCaseAndPunctuation) {
    EXPECT_EQ(normalize_title("  Thin-Film   GROWTH: a Study "), normalize_title("thin film growth a study"));
    EXPECT_NE(normalize_title("Thin film growth"), normalize_title("Thick film growth"));
}

TEST(Text, NormalizeKeyTreatsUnderscoreAsSpace) {
    EXPECT_EQ(normalize_key("Chemistry,_Physical"), normalize_key("chemistry,  physical"));
}

TEST(Text, FormatFixedRoundsHalfAwayFromZero) {
    EXPECT_EQ(format_fixed(1.25, 1), "1.3");
    EXPECT_EQ(format_fixed(-1.25, 1), "-1.3");
    EXPECT_EQ(format_fixed(83.0163, 1), "83.0");
    EXPECT_EQ(format_fixed(-0.0001, 2), "0.00");
    EXPECT_EQ(format_fixed(0.0805, 2), "0.08");
    EXPECT_EQ(format_fixed(14.0 / 134.0, 3), "0.104");
}

TEST(Text, CsvReaderHandlesQuotesAndCrlf) {
    std::istringstream in("a,b\r\n\"x, y\",\"he said \"\"hi\"\"\"\r\n\r\n\"multi\nline\",2\n");
    CsvReader r(in);
    auto h = r.next();
    ASSERT_TRUE(h);
    EXPECT_EQ(h->cells, (std::vector<std::string>{"a", "b"}));
    auto row = r.next();
    ASSERT_TRUE(row);
    EXPECT_EQ(row->cells, (std::vector<std::string>{"x, y", "he said \"hi\""}));
    EXPECT_EQ(row->line, 2u);
    row = r.next();
    ASSERT_TRUE(row);
    EXPECT_EQ(row->cells[0], "multi\nline");
    EXPECT_FALSE(r.next());
}

TEST(Text, CsvUnterminatedQuoteIsParseError) {
    std::istringstream in("a,b\n\"open,1\n");
    CsvReader r(in);
    r.next();
    EXPECT_THROW(r.next(), ParseError);
}

TEST(Text, CsvEscapeRoundTrip) {
    std::vector<std::string> cells{"plain", "with,comma", "with \"quote\"", "new\nline", ""};
    std::ostringstream out;
    write_csv_row(out, cells);
    std::istringstream in(out.str());
    CsvReader r(in);
    auto row = r.next();
    ASSERT_TRUE(row);
    EXPECT_EQ(row->cells, cells);
}

TEST(Text, CsvTableColumnsAreCaseInsensitive) {
    std::istringstream in("\xEF\xBB\xBFJournal,Category,JIF\nA,B,1\n");
    CsvTable t(in);
    EXPECT_EQ(t.require_column("jif"), 2u);
    EXPECT_FALSE(t.column("missing"));
    EXPECT_THROW(t.require_column("missing"), ParseError);
}
