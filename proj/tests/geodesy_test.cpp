#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <pharos/errors.hpp>
#include <pharos/geodesy.hpp>

#include <cmath>
#include <random>

using namespace pharos;

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

} // namespace

TEST_CASE("metres per degree constant") {
    CHECK(kMetresPerDegree == M_PI * kEarthRadiusM / 180.0);
    CHECK(near(kMetresPerDegree, 111194.92664455873, 1e-6));
}

TEST_CASE("geo point validation and longitude normalization") {
    CHECK_NOTHROW(GeoPoint(90.0, 180.0));
    CHECK_NOTHROW(GeoPoint(-90.0, -180.0));
    CHECK_THROWS_AS(GeoPoint(90.001, 0.0), InvalidParamsError);
    CHECK_THROWS_AS(GeoPoint(-90.001, 0.0), InvalidParamsError);
    CHECK_THROWS_AS(GeoPoint(std::nan(""), 0.0), InvalidParamsError);

    // longitude wraps into (-180, 180] instead of failing
    CHECK(GeoPoint(0.0, -180.0).lon == 180.0);
    CHECK(near(GeoPoint(0.0, 180.001).lon, -179.999, 1e-9));
    CHECK(near(GeoPoint(0.0, -181.0).lon, 179.0, 1e-12));
    CHECK(near(GeoPoint(0.0, 540.0).lon, 180.0, 1e-12));
}

TEST_CASE("haversine reference distances") {
    CHECK(near(haversine_distance({0, 0}, {0, 1}), 111194.92664455874, 0.01));
    CHECK(near(haversine_distance({0, 0}, {1, 0}), 111194.92664455874, 0.01));
    CHECK(near(haversine_distance({0, 0}, {0, 180}), 20015086.79602057, 0.1));
    CHECK(haversine_distance({12.5, -33.25}, {12.5, -33.25}) == 0.0);
}

TEST_CASE("haversine symmetry and triangle inequality") {
    std::mt19937 rng(20260819);
    std::uniform_real_distribution<double> lat(-85, 85), lon(-180, 180);
    for (int k = 0; k < 500; ++k) {
        GeoPoint a(lat(rng), lon(rng)), b(lat(rng), lon(rng)), c(lat(rng), lon(rng));
        double ab = haversine_distance(a, b);
        double ba = haversine_distance(b, a);
        CHECK(ab == ba);
        CHECK(ab <= haversine_distance(a, c) + haversine_distance(c, b) + 1e-6);
    }
}

TEST_CASE("initial bearing cardinal directions") {
    CHECK(near(initial_bearing({0, 0}, {1, 0}), 0.0, 1e-9));
    CHECK(near(initial_bearing({0, 0}, {0, 1}), 90.0, 1e-9));
    CHECK(near(initial_bearing({0, 0}, {-1, 0}), 180.0, 1e-9));
    CHECK(near(initial_bearing({0, 0}, {0, -1}), 270.0, 1e-9));
    CHECK(near(initial_bearing({0, 0}, {1, 1}), 44.99563645534485, 1e-9));
}

TEST_CASE("initial bearing stays in [0, 360)") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> lat(-85, 85), lon(-180, 180);
    for (int k = 0; k < 2000; ++k) {
        GeoPoint a(lat(rng), lon(rng)), b(lat(rng), lon(rng));
        if (std::abs(a.lat - b.lat) < 1e-12 && std::abs(a.lon - b.lon) < 1e-12) continue;
        double br = initial_bearing(a, b);
        CHECK(br >= 0.0);
        CHECK(br < 360.0);
    }
}

TEST_CASE("initial bearing rejects coincident points") {
    CHECK_THROWS_AS(initial_bearing({10, 20}, {10, 20}), CoincidentPointsError);
    GeoPoint a(10, 20), b(10 + 5e-13, 20 - 5e-13);
    CHECK_THROWS_AS(initial_bearing(a, b), CoincidentPointsError);
    // one delta at the threshold is enough to define a bearing
    CHECK_NOTHROW(initial_bearing({10, 20}, {10 + 1e-11, 20}));
}

TEST_CASE("destination point due north by one degree") {
    GeoPoint d = destination_point({0, 0}, 0.0, kMetresPerDegree);
    CHECK(near(d.lat, 1.0, 1e-6));
    CHECK(near(d.lon, 0.0, 1e-6));
}

TEST_CASE("destination point zero distance is identity") {
    GeoPoint d = destination_point({37.5, -122.25}, 123.0, 0.0);
    CHECK(near(d.lat, 37.5, 1e-12));
    CHECK(near(d.lon, -122.25, 1e-12));
}

TEST_CASE("destination then distance and bearing round-trip") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> lat(-85, 85), lon(-180, 180);
    std::uniform_real_distribution<double> brg(0, 360), dist(0.5, 5000);
    for (int k = 0; k < 1000; ++k) {
        GeoPoint start(lat(rng), lon(rng));
        double b = brg(rng), d = dist(rng);
        GeoPoint end = destination_point(start, b, d);
        CHECK(near(haversine_distance(start, end), d, 0.01));
        double b2 = initial_bearing(start, end);
        double db = std::abs(normalize_relative(b2 - b));
        CHECK(db < 0.01);
    }
}

TEST_CASE("normalize bearing wraps into [0, 360)") {
    CHECK(normalize_bearing(0.0) == 0.0);
    CHECK(normalize_bearing(360.0) == 0.0);
    CHECK(normalize_bearing(720.0) == 0.0);
    CHECK(near(normalize_bearing(-90.0), 270.0, 1e-12));
    CHECK(near(normalize_bearing(361.5), 1.5, 1e-12));
    CHECK(normalize_bearing(359.75) == 359.75);
}

TEST_CASE("normalize relative wraps into (-180, 180]") {
    CHECK(normalize_relative(180.0) == 180.0);
    CHECK(normalize_relative(-180.0) == 180.0);
    CHECK(near(normalize_relative(190.0), -170.0, 1e-12));
    CHECK(near(normalize_relative(-190.0), 170.0, 1e-12));
    CHECK(normalize_relative(360.0) == 0.0);
    CHECK(normalize_relative(540.0) == 180.0);
    CHECK(normalize_relative(-540.0) == 180.0);
    for (double x = -179.5; x <= 180.0; x += 0.5) {
        for (int k = -3; k <= 3; ++k) {
            CHECK(near(normalize_relative(x + 360.0 * k), x, 1e-9));
        }
    }
    // idempotent on the whole range
    for (double x = -179.5; x <= 180.0; x += 0.25) {
        CHECK(normalize_relative(normalize_relative(x)) == normalize_relative(x));
    }
}

TEST_CASE("enu east component shrinks with latitude") {
    EnuOffset o = to_local_enu({60, 0}, {60, 0.001});
    CHECK(near(o.east_m, 55.59746332227939, 1e-9));
    CHECK(near(o.north_m, 0.0, 1e-9));

    EnuOffset n = to_local_enu({0, 0}, {0.001, 0});
    CHECK(near(n.north_m, 111.19492664455873, 1e-9));
    CHECK(near(n.east_m, 0.0, 1e-9));
}

TEST_CASE("enu round-trip within projection range") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> lat(-84, 84), lon(-179, 179);
    std::uniform_real_distribution<double> de(-20000, 20000), dn(-20000, 20000);
    for (int k = 0; k < 1000; ++k) {
        GeoPoint origin(lat(rng), lon(rng));
        EnuOffset off{de(rng), dn(rng)};
        GeoPoint p = from_local_enu(origin, off);
        EnuOffset back = to_local_enu(origin, p);
        CHECK(near(back.east_m, off.east_m, 1e-6));
        CHECK(near(back.north_m, off.north_m, 1e-6));
    }
}

TEST_CASE("enu rejects points beyond 50 km") {
    // 0.5 deg of arc is about 55.6 km
    CHECK_THROWS_AS(to_local_enu({0, 0}, {0.5, 0}), OutOfProjectionRangeError);
    CHECK_NOTHROW(to_local_enu({0, 0}, {0.44, 0}));
}
