#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ctcprobe/plot.hpp"
#include "ctcprobe/response.hpp"
#include "ctcprobe/sweep.hpp"

using namespace ctcprobe;

namespace {
SweepConfig small_sweep() {
    SweepConfig cfg;
    cfg.mode = SweepMode::curvature;
    cfg.omega = 0.1;
    cfg.fixed = 25.0;  // ell
    cfg.gamma = 0.01;
    cfg.N = 1;
    cfg.grid = {0.04, 0.05};
    cfg.quadrature.abs_tol = 1e-7;
    cfg.quadrature.rel_tol = 1e-7;
    cfg.quadrature.eps_ladder = {1e-2, 5e-3, 2.5e-3};
    return cfg;
}
}  // namespace

TEST_CASE("sweep config validation") {
    SweepConfig cfg = small_sweep();
    cfg.grid = {};
    CHECK_THROWS_AS(cfg.validate(), InvalidParameterError);
    cfg = small_sweep();
    cfg.grid = {0.05, 0.05};
    CHECK_THROWS_AS(cfg.validate(), InvalidParameterError);
    cfg = small_sweep();
    cfg.grid = {0.04, 0.5};  // violates the no-CTC support guard
    CHECK_THROWS_AS(cfg.validate(), InvalidParameterError);
}

TEST_CASE("sweep runs, stays consistent with single-point responses") {
    const SweepConfig cfg = small_sweep();
    const SweepTable table = run_sweep(cfg, 2);
    REQUIRE(table.rows.size() == 2);

    for (const auto& r : table.rows) {
        CHECK(r.status == "ok");
        CHECK(r.P_TM >= 0.0);
        CHECK(r.P_AdS2 >= 0.0);
        CHECK(r.P_EC >= 0.0);
        CHECK(r.P_M >= 0.0);
    }
    // curvature mode: P_EC and P_M constant across rows, P_AdS2 varies
    CHECK(table.rows[0].P_EC == table.rows[1].P_EC);
    CHECK(table.rows[0].P_M == table.rows[1].P_M);
    CHECK(table.rows[0].P_AdS2 != table.rows[1].P_AdS2);

    // one row matches individually computed responses
    const auto& row = table.rows[1];  // w = 0.05
    const double pm = response_minkowski_closed({cfg.omega}).probability;
    CHECK(row.P_M == doctest::Approx(pm).epsilon(1e-14));
    const double pec =
        response_einstein_cylinder({cfg.omega}, {cfg.fixed, cfg.gamma}, cfg.quadrature)
            .probability;
    CHECK(row.P_EC == doctest::Approx(pec).epsilon(1e-12));
    TimeMachineOptions opts;
    opts.N = cfg.N;
    const auto tm = response_time_machine({cfg.omega}, {std::exp(0.05 * 25.0), 25.0},
                                          cfg.quadrature, opts);
    CHECK(row.P_TM == doctest::Approx(tm.probability).epsilon(1e-12));
}

TEST_CASE("sweep determinism: byte-identical CSV") {
    const SweepConfig cfg = small_sweep();
    std::ostringstream a, b;
    write_csv(a, run_sweep(cfg, 2));
    write_csv(b, run_sweep(cfg, 1));  // thread count must not matter
    CHECK(a.str() == b.str());
}

TEST_CASE("CSV round trip") {
    const SweepTable table = run_sweep(small_sweep(), 2);
    std::ostringstream os;
    write_csv(os, table);

    std::istringstream is(os.str());
    const SweepTable back = read_csv(is);
    REQUIRE(back.rows.size() == table.rows.size());
    for (size_t i = 0; i < table.rows.size(); ++i) {
        CHECK(back.rows[i].swept == table.rows[i].swept);  // 17 digits survive
        CHECK(back.rows[i].P_TM == table.rows[i].P_TM);
        CHECK(back.rows[i].P_AdS2 == table.rows[i].P_AdS2);
        CHECK(back.rows[i].P_EC == table.rows[i].P_EC);
        CHECK(back.rows[i].P_M == table.rows[i].P_M);
        CHECK(back.rows[i].status == table.rows[i].status);
    }
}

TEST_CASE("CSV parse errors carry line numbers") {
    std::istringstream bad_header("not,a,header\n");
    CHECK_THROWS_WITH_AS(read_csv(bad_header),
                         doctest::Contains("line 1"), InvalidParameterError);

    std::istringstream bad_fields(std::string(kSweepCsvHeader) + "\n1,2,3\n");
    CHECK_THROWS_WITH_AS(read_csv(bad_fields), doctest::Contains("line 2"),
                         InvalidParameterError);

    std::istringstream bad_num(std::string(kSweepCsvHeader) + "\nx,0,0,0,0,0,0,ok\n");
    CHECK_THROWS_WITH_AS(read_csv(bad_num), doctest::Contains("line 2"), InvalidParameterError);
}

TEST_CASE("sweep config JSON") {
    const std::string text = R"({
        "mode": "circumference",
        "omega": 0.1,
        "w": 0.05,
        "gamma": 0.01,
        "N": 10,
        "grid": [10, 25, 50],
        "quadrature": {"abs_tol": 1e-9, "eps_ladder": [0.01, 0.005, 0.0025]},
        "output_path": "fig2.csv"
    })";
    const SweepConfig cfg = load_sweep_config(text);
    CHECK(cfg.mode == SweepMode::circumference);
    CHECK(cfg.fixed == 0.05);
    CHECK(cfg.N == 10);
    CHECK(cfg.grid.size() == 3);
    CHECK(cfg.quadrature.abs_tol == 1e-9);
    CHECK(cfg.quadrature.eps_ladder.size() == 3);
    CHECK(cfg.output_path == "fig2.csv");

    CHECK_THROWS_AS(load_sweep_config("{ bad json"), InvalidParameterError);
    CHECK_THROWS_AS(load_sweep_config(R"({"mode": "sideways"})"), InvalidParameterError);

    const SweepConfig auto_n = load_sweep_config(R"({"N": "auto"})");
    CHECK(auto_n.auto_N);
}

TEST_CASE("SVG rendering") {
    SweepTable table;
    for (int i = 0; i < 4; ++i) {
        SweepRow r;
        r.swept = 10.0 + i * 10.0;
        r.P_TM = 0.42 + 0.001 * i;
        r.P_AdS2 = 0.44;
        r.P_EC = 0.43;
        r.P_M = 0.4398;
        table.rows.push_back(r);
    }
    const std::string svg = render_svg(table, "ell");
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("P_TM") != std::string::npos);
    CHECK(svg.find("P_AdS2") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("ell") != std::string::npos);
    // deterministic byte output
    CHECK(render_svg(table, "ell") == svg);

    // single row: markers, no polyline
    SweepTable one;
    one.rows.push_back(table.rows[0]);
    const std::string svg1 = render_svg(one, "ell");
    CHECK(svg1.find("polyline") == std::string::npos);
    CHECK(svg1.find("circle") != std::string::npos);

    // failed rows are excluded; nothing plottable -> error
    SweepTable failed;
    SweepRow r;
    r.status = "error: nope";
    failed.rows.push_back(r);
    CHECK_THROWS_AS(render_svg(failed, "x"), InvalidParameterError);
    CHECK_THROWS_AS(render_svg(SweepTable{}, "x"), InvalidParameterError);
}
