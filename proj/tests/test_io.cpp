#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cakecut/experiments.hpp"
#include "cakecut/io.hpp"
#include "cakecut/render.hpp"

using namespace cakecut;

TEST_CASE("instance files round-trip at full precision") {
    auto inst = random_instance(4, 424242, false);
    std::ostringstream out;
    write_instance(inst, out);
    std::istringstream in(out.str());
    auto back = read_instance(in);
    REQUIRE(back.n() == inst.n());
    for (int i = 0; i < inst.n(); ++i) {
        CHECK(std::abs(back.agent(i).peak() - inst.agent(i).peak()) <= 1e-12);
        CHECK(std::abs(back.agent(i).peak_density() - inst.agent(i).peak_density()) <= 1e-12);
        CHECK(std::abs(back.agent(i).slope() - inst.agent(i).slope()) <= 1e-9);
    }
}

TEST_CASE("allocation files round-trip") {
    auto inst = figure3_instance();
    auto alloc = run_mww(inst).allocation;
    std::ostringstream out;
    write_allocation(alloc, out);
    std::istringstream in(out.str());
    auto back = read_allocation(in);
    REQUIRE(back.n() == alloc.n());
    for (int i = 0; i < alloc.n(); ++i) {
        REQUIRE(back.piece(i).size() == alloc.piece(i).size());
        for (size_t j = 0; j < alloc.piece(i).size(); ++j) {
            CHECK(std::abs(back.piece(i)[j].start - alloc.piece(i)[j].start) <= 1e-12);
            CHECK(std::abs(back.piece(i)[j].end - alloc.piece(i)[j].end) <= 1e-12);
        }
    }
}

TEST_CASE("instance parsing accepts shared slope and rejects malformed input") {
    {
        std::istringstream in(R"({"version":1,"slope":9.0,"agents":[{"peak":0.3},{"peak":0.7}]})");
        auto inst = read_instance(in);
        CHECK(inst.common_slope());
        CHECK(inst.agent(0).slope() == doctest::Approx(9.0));
    }
    {
        std::istringstream in("{not json");
        CHECK_THROWS_AS(read_instance(in), DomainError);
    }
    {
        std::istringstream in(R"({"version":1,"agents":[{"peak":0.5}]})");
        CHECK_THROWS_AS(read_instance(in), DomainError);  // neither density nor slope
    }
    {
        std::istringstream in(
            R"({"version":1,"agents":[{"peak":0.5,"peak_density":2.0,"slope":4.0}]})");
        CHECK_THROWS_AS(read_instance(in), DomainError);  // both
    }
    {
        std::istringstream in(R"({"version":7,"agents":[{"peak":0.5,"peak_density":2.0}]})");
        CHECK_THROWS_AS(read_instance(in), DomainError);  // version
    }
    {
        std::istringstream in(R"({"version":1,"agents":[{"peak":0.5,"peak_density":0.5}]})");
        CHECK_THROWS_AS(read_instance(in), NonNormalizable);
    }
}

TEST_CASE("waste tolerance can come from the file or the caller") {
    const std::string text =
        R"({"version":1,"agents":[{"peak":0.1,"peak_density":5.0},{"peak":0.9,"peak_density":5.0}],
            "options":{"waste_tolerant":true}})";
    std::istringstream in(text);
    auto inst = read_instance(in);
    CHECK(inst.waste_tolerant());
    CHECK_FALSE(inst.coverage());

    const std::string bare =
        R"({"version":1,"agents":[{"peak":0.1,"peak_density":5.0},{"peak":0.9,"peak_density":5.0}]})";
    std::istringstream in2(bare);
    CHECK_THROWS_AS(read_instance(in2), CoverageError);
    std::istringstream in3(bare);
    CHECK(read_instance(in3, true).waste_tolerant());
}

TEST_CASE("svg rendering is deterministic and draws every agent") {
    auto inst = figure3_instance();
    const auto a = render_svg(inst);
    const auto b = render_svg(inst);
    CHECK(a == b);
    CHECK(a.rfind("<svg", 0) == 0);

    size_t polylines = 0;
    for (size_t pos = a.find("<polyline"); pos != std::string::npos;
         pos = a.find("<polyline", pos + 1))
        polylines++;
    CHECK(polylines == 3);

    const auto ww = run_ww(inst);
    const auto with_alloc = render_svg(inst, &ww.allocation);
    size_t polygons = 0;
    for (size_t pos = with_alloc.find("<polygon"); pos != std::string::npos;
         pos = with_alloc.find("<polygon", pos + 1))
        polygons++;
    size_t total_pieces = 0;
    for (const auto& p : ww.allocation.pieces()) total_pieces += p.size();
    CHECK(polygons == total_pieces);
    CHECK(render_svg(inst, &ww.allocation) == with_alloc);

    // each agent keeps her own support: three solid triangles
    auto fig1 = disjoint_support_instance(3);
    std::vector<Piece> own(3);
    for (int i = 0; i < 3; ++i)
        own[i].push_back({fig1.agent(i).support_left(), fig1.agent(i).support_right()});
    const auto po = Allocation::from_pieces(std::move(own));
    const auto solid = render_svg(fig1, &po);
    size_t solid_polygons = 0;
    for (size_t pos = solid.find("<polygon"); pos != std::string::npos;
         pos = solid.find("<polygon", pos + 1))
        solid_polygons++;
    CHECK(solid_polygons == 3);
}
