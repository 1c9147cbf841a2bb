#include <doctest.h>

#include <cmath>

#include "ml_oracle.hpp"
#include "ml_points.hpp"
#include "mfrisk/mittag_leffler.hpp"

using namespace mfrisk;

namespace
{
struct Row
{
    int num;
    int den;
    double beta;
    double gamma;
    double z;
    double value;
};

Row const table[] = {
#include "ml_reference_table.inc"
};
}  // namespace

TEST_CASE("frozen table rows are reproduced by the oracle")
{
    auto const pts = oracle::reference_points();
    REQUIRE(std::size(table) == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        auto const& r = table[i];
        CHECK(r.num == pts[i].num);
        CHECK(r.den == pts[i].den);
        CHECK(r.beta == pts[i].beta);
        CHECK(r.z == pts[i].z);
        double const v = oracle::ml3({r.num, r.den}, r.beta, r.gamma, r.z).convert_to<double>();
        INFO("row " << i);
        CHECK(std::abs(v - r.value) <= 1e-16 * std::max(1.0, std::abs(v)));
    }
}

TEST_CASE("library against the oracle on the table")
{
    double worst = 0.0;
    for (auto const& r : table)
    {
        double const v = ml3(MLParams(double(r.num) / r.den, r.beta, r.gamma), r.z);
        worst = std::max(worst, std::abs(v - r.value));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("library against the oracle on further points")
{
    // z > 0 and large |z| for the two-parameter function
    for (auto [num, den] : {std::pair{1, 4}, {1, 2}, {4, 5}, {1, 1}})
    {
        double const a = double(num) / den;
        for (double z : {-60.0, -35.0, -7.5, -0.01, 0.5, 2.0})
        {
            // the largest series term grows like exp(|z|^{1/a}), which sets
            // the working precision
            if (a < 0.5 && std::abs(z) > 8)
                continue;
            for (double b : {0.7, 1.0, 2.2})
            {
                double const o
                    = oracle::ml3({num, den}, b, 1.0, z).convert_to<double>();
                INFO("alpha " << a << " beta " << b << " z " << z);
                CHECK(std::abs(ml2(a, b, z) - o) <= 1e-10 * std::max(1.0, std::abs(o)));
            }
        }
    }
}
