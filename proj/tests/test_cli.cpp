#include <doctest.h>

#include <algorithm>
#include <fstream>

#include "plurilab/cli.hpp"
#include "plurilab/config.hpp"

using namespace plurilab;

TEST_CASE("config parsing") {
    const auto c = Config::from_string("# comment\n a = 1 \nb=x, y # trailing\n\nlist = 1, 2,3\n");
    CHECK(c.get_int("a") == 1);
    CHECK(c.get_string("b") == "x, y");
    CHECK(c.get_ints("list") == std::vector<long long>{1, 2, 3});
    CHECK(c.get_double("missing", 2.5) == 2.5);
    CHECK(c.canonical() == "a=1\nb=x, y\nlist=1, 2,3\n");
    CHECK_THROWS_AS(Config::from_string("a = 1\na = 2\n"), ConfigError);
    CHECK_THROWS_AS(Config::from_string("no equals sign\n"), ConfigError);
    CHECK_THROWS_AS(c.get_string("missing"), ConfigError);
    CHECK_THROWS_AS(Config::from_string("a = x").get_int("a"), ConfigError);
    CHECK_THROWS_AS(Config::from_string("a = 1.5").get_int("a"), ConfigError);
}

TEST_CASE("unused keys are reported") {
    const auto c = Config::from_string("a = 1\nb = 2\n");
    c.get_int("a");
    CHECK(c.unused() == std::vector<std::string>{"b"});
    CHECK_THROWS_AS(c.require_all_used(), ConfigError);
}

TEST_CASE("fnv1a reference values") {
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("run is deterministic and wrapped") {
    const auto c = Config::from_string("geometry = circle\nresolution = 30\nn_max = 4\n");
    const auto a = cli::run("fekete", c, {7, false});
    const auto b = cli::run("fekete", Config::from_string(c.canonical()), {7, false});
    CHECK(a.exit_code == cli::ok);
    CHECK(cli::dump(a.report) == cli::dump(b.report));
    CHECK(a.report["schema"] == "plurilab/fekete/1");
    CHECK(a.report["config_hash"].get<std::string>().size() == 16);
    const auto d = cli::run("fekete", c, {8, false});
    CHECK(d.report["config_hash"] != a.report["config_hash"]);
}

TEST_CASE("config and computation errors") {
    const auto unknown = cli::run("nope", Config::from_string("geometry = circle\n"));
    CHECK(unknown.exit_code == cli::config_error);
    CHECK(unknown.report["schema"] == "plurilab/error/1");

    const auto extra = cli::run("fekete", Config::from_string("geometry = circle\nresolution = 9\nn = 2\nzzz = 1\n"));
    CHECK(extra.exit_code == cli::config_error);
    CHECK(extra.report["error"]["kind"] == "config");

    const auto badgeom = cli::run("fekete", Config::from_string("geometry = circle\nresolution = 0\nn = 2\n"));
    CHECK(badgeom.exit_code == cli::config_error);

    const auto cap = cli::run("fekete", Config::from_string("geometry = circle\nresolution = 90\nn = 31\n"));
    CHECK(cap.exit_code == cli::config_error);

    const auto deg = cli::run("bergman", Config::from_string("geometry = circle\nresolution = 2\nn = 3\n"));
    CHECK(deg.exit_code == cli::computation_error);
    CHECK(deg.report["error"]["kind"] == "degenerate");
}

TEST_CASE("every subcommand runs on a small config") {
    const std::vector<std::pair<std::string, std::string>> cases{
        {"fekete", "geometry = circle\nresolution = 25\nn_max = 3\n"},
        {"optmeas", "geometry = interval\nresolution = 21\nn_max = 3\nalgo = vertex_exchange\n"},
        {"cheb", "geometry = torus\ndimension = 2\nresolution = 6\nn_max = 2\n"},
        {"tfd", "geometry = circle\nresolution = 25\nn_min = 2\nn_max = 4\n"},
        {"bergman", "geometry = torus\ndimension = 2\nresolution = 7\nn_max = 3\n"},
        {"energy-check", "geometry = circle\nradius = 0.5\nresolution = 40\nmodel = disk\nmodel_radius = 0.5\nn_max = 5\n"},
        {"diag", "geometry = disk\nradial_resolution = 5\nangular_resolution = 8\nweight = quadratic\nn = 2\n"
                 "model = weighted_disk\nweak_degrees = 2, 3\n"}};
    for (const auto& [sub, text] : cases) {
        CAPTURE(sub);
        const auto r = cli::run(sub, Config::from_string(text), {1, false});
        CHECK(r.exit_code == cli::ok);
        CHECK(r.report.contains("result"));
    }
    CHECK(cli::subcommands().size() == cases.size());
}

namespace {

// Subset of JSON Schema used by the files under schema/.
bool conforms(const cli::json& v, const cli::json& s, std::string& where) {
    auto type_ok = [&](const std::string& t) {
        if (t == "object") return v.is_object();
        if (t == "array") return v.is_array();
        if (t == "string") return v.is_string();
        if (t == "integer") return v.is_number_integer();
        if (t == "number") return v.is_number();
        if (t == "boolean") return v.is_boolean();
        if (t == "null") return v.is_null();
        return false;
    };
    if (s.contains("type")) {
        bool ok = false;
        if (s["type"].is_array())
            for (const auto& t : s["type"]) ok = ok || type_ok(t.get<std::string>());
        else
            ok = type_ok(s["type"].get<std::string>());
        if (!ok) return false;
    }
    if (s.contains("const") && v != s["const"]) return false;
    if (s.contains("enum") && std::find(s["enum"].begin(), s["enum"].end(), v) == s["enum"].end()) return false;
    if (s.contains("required"))
        for (const auto& k : s["required"])
            if (!v.contains(k.get<std::string>())) {
                where += "/" + k.get<std::string>() + " missing";
                return false;
            }
    if (s.contains("properties") && v.is_object())
        for (const auto& [k, sub] : s["properties"].items())
            if (v.contains(k) && !conforms(v[k], sub, where)) {
                where = "/" + k + where;
                return false;
            }
    if (s.contains("items") && v.is_array())
        for (const auto& x : v)
            if (!conforms(x, s["items"], where)) return false;
    if (s.contains("additionalProperties") && v.is_object() && s["additionalProperties"].is_object())
        for (const auto& [k, x] : v.items())
            if (!conforms(x, s["additionalProperties"], where)) return false;
    return true;
}

cli::json load_schema(const std::string& name) {
    std::ifstream f(std::string(PLURILAB_SCHEMA_DIR) + "/" + name + ".schema.json");
    REQUIRE(f);
    return cli::json::parse(f);
}

}  // namespace

TEST_CASE("reports conform to their schemas") {
    const std::vector<std::pair<std::string, std::string>> cases{
        {"fekete", "geometry = circle\nresolution = 25\nn_max = 3\n"},
        {"optmeas", "geometry = interval\nresolution = 21\nn_max = 2\n"},
        {"cheb", "geometry = interval\nresolution = 64\nn_max = 3\n"},
        {"tfd", "geometry = circle\nresolution = 25\nn_min = 2\nn_max = 4\n"},
        {"bergman", "geometry = circle\nresolution = 25\nn_max = 3\n"},
        {"energy-check", "geometry = disk\nradial_resolution = 6\nangular_resolution = 12\nweight = quadratic\n"
                         "model = weighted_disk\nn_max = 4\n"},
        {"diag", "geometry = disk\nradial_resolution = 5\nangular_resolution = 8\nweight = quadratic\nn = 2\n"
                 "model = weighted_disk\nweak_degrees = 2, 3\n"}};
    for (const auto& [sub, text] : cases) {
        CAPTURE(sub);
        const auto r = cli::run(sub, Config::from_string(text), {3, false});
        // round trip through text so NaN becomes null as in the files
        const auto parsed = cli::json::parse(cli::dump(r.report));
        std::string where;
        CHECK_MESSAGE(conforms(parsed, load_schema(sub), where), where);
    }
    const auto fk = cli::json::parse(cli::dump(cli::run("fekete", Config::from_string(cases[0].second)).report));
    std::string ignored;
    CHECK_FALSE(conforms(fk, load_schema("tfd"), ignored));

    const auto bad = cli::run("bergman", Config::from_string("geometry = circle\nresolution = 2\nn = 3\n"));
    std::string where;
    CHECK_MESSAGE(conforms(cli::json::parse(cli::dump(bad.report)), load_schema("error"), where), where);
}
