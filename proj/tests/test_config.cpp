#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "aqec/config.hpp"
#include "aqec/errors.hpp"
#include "aqec/experiments.hpp"
#include "aqec/serialize.hpp"

using namespace aqec;
namespace fs = std::filesystem;

TEST_CASE("config round trip") {
    RunConfig c;
    c.gamma = 0.05;
    c.alpha = 3.5;
    c.omega = 28;
    c.alpha_rule = "omega/8";
    c.error_types = {Pauli::Y, Pauli::X};
    c.topology = Topology::Zigzag;
    c.t_max = 2.5;
    c.n_points = 26;
    c.dt = 1e-4;
    c.n_traj = 123;
    c.master_seed = 0xdeadbeefcafeULL;
    c.workers = 3;
    c.output_dir = "out/somewhere";
    CHECK(RunConfig::parse(c.serialize()) == c);

    const fs::path tmp = fs::temp_directory_path() / "aqec_cfg_test.json";
    c.save(tmp);
    CHECK(RunConfig::load(tmp) == c);
    fs::remove(tmp);
}

TEST_CASE("defaults parse and validate") {
    const RunConfig c = RunConfig::parse("{}");
    CHECK(c == RunConfig{});
    CHECK(c.effective_alpha() == 12.5);
}

TEST_CASE("alpha rule binds alpha to omega") {
    RunConfig c;
    c.alpha = 99;
    c.alpha_rule = "omega/8";
    c.omega = 80;
    CHECK(c.effective_alpha() == 10.0);
    CHECK(c.network_params().alpha == 10.0);
    c.alpha_rule.clear();
    CHECK(c.effective_alpha() == 99.0);
}

TEST_CASE("field-level validation messages") {
    auto expect_mention = [](RunConfig c, const std::string& field) {
        try {
            c.validate();
            FAIL("expected a config error mentioning " << field);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(field) != std::string::npos);
        }
    };
    RunConfig c;
    c.gamma = -1;
    expect_mention(c, "gamma");
    c = RunConfig{};
    c.n_points = 1;
    expect_mention(c, "n_points");
    c = RunConfig{};
    c.error_types = {};
    expect_mention(c, "error_types");
    c = RunConfig{};
    c.error_types = {Pauli::X, Pauli::X};
    expect_mention(c, "error_types");
    c = RunConfig{};
    c.alpha_rule = "gamma/2";
    expect_mention(c, "alpha_rule");
    c = RunConfig{};
    c.n_traj = 0;
    expect_mention(c, "n_traj");

    // gamma = 0 with no error types is allowed
    c = RunConfig{};
    c.gamma = 0;
    c.error_types = {};
    c.validate();

    CHECK_THROWS_AS((void)RunConfig::parse("{not json"), ConfigError);
    CHECK_THROWS_AS((void)RunConfig::parse("{\"topology\": \"ring\"}"), ConfigError);
    CHECK_THROWS_AS((void)parse_pauli_set("XQ"), ConfigError);
}

TEST_CASE("pauli set and topology parsing") {
    CHECK(pauli_set_string(parse_pauli_set("xzy")) == "XZY");
    CHECK(parse_pauli_set("X, Z").size() == 2);
    CHECK(topology_name(parse_topology("zigzag")) == "zigzag");
    CHECK(topology_name(parse_topology("grid")) == "grid");
}

TEST_CASE("double formatting is stable and faithful") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.10000000000000001");
    const double v = 3.14159265358979323;
    CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("corrupt kind parsing") {
    CHECK(parse_corrupt("") == CorruptKind::None);
    CHECK(parse_corrupt("h-sign") == CorruptKind::HSign);
    CHECK(parse_corrupt("l-sign") == CorruptKind::LSign);
    CHECK(parse_corrupt("decoder") == CorruptKind::Decoder);
    CHECK_THROWS_AS((void)parse_corrupt("what"), ConfigError);
}

TEST_CASE("audit negative controls fail the named check") {
    NetworkParams p;
    p.alpha = 12.5;
    p.omega = 100;
    p.gamma = 0.1;

    const AuditReport ok = compose_and_audit(p);
    CHECK(ok.passed());

    const AuditReport h = compose_and_audit(p, CorruptKind::HSign);
    CHECK(!h.passed());
    for (const AuditCheck& c : h.checks)
        if (c.name == "eq2-compare") CHECK(!c.pass);

    const AuditReport l = compose_and_audit(p, CorruptKind::LSign);
    CHECK(!l.passed());

    const AuditReport d = compose_and_audit(p, CorruptKind::Decoder);
    bool decoder_failed = false;
    for (const AuditCheck& c : d.checks)
        if (c.name == "decoder-28case") decoder_failed = !c.pass;
    CHECK(decoder_failed);
}
