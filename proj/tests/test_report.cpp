#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "partitio/report.hpp"

using namespace partitio;

namespace {

RunConfig config(const std::string& command, std::map<std::string, std::string> params = {},
                 OutputFormat format = OutputFormat::csv) {
    RunConfig cfg;
    cfg.command = command;
    cfg.params = std::move(params);
    cfg.format = format;
    return cfg;
}

std::pair<int, std::string> run_text(const RunConfig& cfg) {
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return {code, out.str() + err.str()};
}

}  // namespace

TEST(Constants, CsvRowForOneEighth) {
    const auto [code, text] = run_text(config("constants"));
    EXPECT_EQ(code, exit_ok);
    EXPECT_NE(text.find("\n0.125,2.76129437,4.1952465,3.353271,3.710089\n"), std::string::npos) << text;
    EXPECT_NE(text.find("# checks\n"), std::string::npos);
}

TEST(Constants, JsonRoundTrip) {
    const std::string text = emit_string(build_report(config("constants")), OutputFormat::json);
    const auto j = nlohmann::json::parse(text);
    EXPECT_EQ(j.dump(2) + "\n", text);
    EXPECT_TRUE(j["ok"].get<bool>());
    EXPECT_EQ(j["tables"][0]["columns"][1]["rounding"], "up");
}

TEST(Format, Parse) {
    EXPECT_EQ(parse_format("json"), OutputFormat::json);
    EXPECT_THROW(parse_format("xml"), config_error);
}

TEST(Format, Pretty) {
    Report r{"demo", {{"t", {{"a"}, {"bb", 2}}, {{std::int64_t{1}, 0.5}, {std::int64_t{10}, 2.0}}}}, {{"ok", true, ""}}};
    EXPECT_EQ(emit_string(r, OutputFormat::pretty), "t\n a    bb\n--  ----\n 1  0.50\n10  2.00\n\nPASS ok\n");
    EXPECT_EQ(emit_string(r, OutputFormat::csv), "# t\na,bb\n1,0.50\n10,2.00\n# checks\nname,pass,detail\nok,true,\n");
}

TEST(Run, UnknownKeyIsUsageError) {
    const auto [code, text] = run_text(config("constants", {{"bogus", "1"}}));
    EXPECT_EQ(code, exit_usage);
    EXPECT_NE(text.find("bogus"), std::string::npos);
}

TEST(Run, BadValueIsUsageError) {
    EXPECT_EQ(run_text(config("counts", {{"k", "four"}})).first, exit_usage);
    EXPECT_EQ(run_text(config("constants", {{"k_max", "2"}})).first, exit_usage);
}

TEST(Run, Counts) {
    const auto [code, text] = run_text(config("counts", {{"zero_set", "true"}}));
    EXPECT_EQ(code, exit_ok);
    EXPECT_NE(text.find("# zero_set\nn\n47\n62\n63\n77\n78\n79\n143\n158\n159\n"), std::string::npos) << text;
}

TEST(Run, Thm14TablePasses) {
    EXPECT_EQ(run_text(config("thm14-table")).first, exit_ok);
}

TEST(Run, Singular) {
    const auto [code, text] = run_text(config("singular", {{"Q", "64"}}));
    EXPECT_EQ(code, exit_ok) << text;
}

TEST(Run, CheckAcceptsFractions) {
    const auto [code, text] = run_text(config("check", {{"phi", "1/8"}}));
    EXPECT_EQ(code, exit_ok) << text;
    EXPECT_NE(text.find("height pruning 2 Delta_s < k phi,false"), std::string::npos) << text;
    EXPECT_NE(text.find("all conditions hold,false"), std::string::npos);
}

TEST(ConfigText, Parses) {
    std::istringstream in("# comment\nk = 4\n\ns=6  # trailing\n");
    const auto entries = parse_config_text(in);
    ASSERT_EQ(entries.size(), 2u);
    EXPECT_EQ(entries[0].key, "k");
    EXPECT_EQ(entries[0].value, "4");
    EXPECT_EQ(entries[1].line, 4);
    EXPECT_EQ(entries[1].value, "6");
}

TEST(ConfigText, ErrorsCarryLineNumbers) {
    auto line_of = [](const std::string& text) {
        std::istringstream in(text);
        try {
            parse_config_text(in);
        } catch (const config_error& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("k = 1\nnonsense\n"), 2);
    EXPECT_EQ(line_of("k = 1\n\nk = 2\n"), 3);
    EXPECT_EQ(line_of("= 3\n"), 1);
    EXPECT_EQ(line_of("k =\n"), 1);
    EXPECT_EQ(line_of("k = 1\n"), 0);
}
