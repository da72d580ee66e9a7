#include <doctest.h>

#include <sstream>

#include "gamesh/io.hpp"
#include "gamesh/primitives.hpp"

using namespace gamesh;

TEST_CASE("obj: minimal file") {
    std::istringstream in("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
    const IndexedMesh m = read_obj(in, "mini.obj");
    CHECK(m.vertex_count() == 3);
    CHECK(m.face_count() == 1);
    CHECK(m.faces[0] == Face{0, 1, 2});
}

TEST_CASE("obj: quads fan-triangulate, other directives are ignored") {
    std::istringstream in(
        "# comment\nmtllib foo.mtl\no thing\nv 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\n"
        "vn 0 0 1\nvt 0 0\ns off\nusemtl bar\nf 1 2 3 4\n");
    const IndexedMesh m = read_obj(in, "quad.obj");
    CHECK(m.vertex_count() == 4);
    REQUIRE(m.face_count() == 2);
    CHECK(m.faces[0] == Face{0, 1, 2});
    CHECK(m.faces[1] == Face{0, 2, 3});
}

TEST_CASE("obj: slash forms and negative indices") {
    std::istringstream in(
        "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1/1 2/2/2 3//3\n"
        "v 2 0 0\nf -1 -3 -4\n");
    const IndexedMesh m = read_obj(in, "slash.obj");
    REQUIRE(m.face_count() == 2);
    CHECK(m.faces[0] == Face{0, 1, 2});
    CHECK(m.faces[1] == Face{3, 1, 0}); // relative to the 4 vertices seen so far
}

TEST_CASE("obj: errors carry the file name and line number") {
    std::istringstream bad_face("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 5\n");
    CHECK_THROWS_WITH_AS(read_obj(bad_face, "t.obj"),
                         doctest::Contains("t.obj:4"), std::runtime_error);
    std::istringstream bad_vertex("v 0 nope 0\n");
    CHECK_THROWS_WITH_AS(read_obj(bad_vertex, "t.obj"),
                         doctest::Contains("t.obj:1"), std::runtime_error);
    std::istringstream short_face("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2\n");
    CHECK_THROWS_AS(read_obj(short_face, "t.obj"), std::runtime_error);
}

TEST_CASE("obj: write-read round trip is a fixed point") {
    const IndexedMesh m = make_torus(12, 6, 0.35, 0.12);
    std::ostringstream first;
    write_obj(m, first);
    std::istringstream back(first.str());
    const IndexedMesh m2 = read_obj(back, "roundtrip.obj");
    REQUIRE(m2.vertex_count() == m.vertex_count());
    REQUIRE(m2.face_count() == m.face_count());
    std::ostringstream second;
    write_obj(m2, second);
    CHECK(first.str() == second.str()); // bit-stable at 9 significant digits
    for (int i = 0; i < m.vertex_count(); ++i)
        CHECK(distance2(m.vertices[i], m2.vertices[i]) < 1e-18);
}

TEST_CASE("off: header and counts respected") {
    std::istringstream in("OFF\n4 2 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n3 0 1 2\n3 0 2 3\n");
    const IndexedMesh m = read_off(in, "t.off");
    CHECK(m.vertex_count() == 4);
    CHECK(m.face_count() == 2);
    std::istringstream quad("OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n");
    CHECK(read_off(quad, "q.off").face_count() == 2); // fan rule applies here too
    std::istringstream bad("OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n3 0 1 9\n");
    CHECK_THROWS_AS(read_off(bad, "bad.off"), std::runtime_error);
}

TEST_CASE("xyz: points round trip in order") {
    std::istringstream in("0 0 0\n# note\n\n1 2 3\n  4 5 6  \n");
    const std::vector<Vec3> pts = read_xyz(in, "p.xyz");
    REQUIRE(pts.size() == 3);
    CHECK(pts[1].x == 1.0);
    CHECK(pts[2].z == 6.0);

    std::ostringstream out;
    write_xyz(pts, out);
    std::istringstream back(out.str());
    const std::vector<Vec3> again = read_xyz(back, "p.xyz");
    REQUIRE(again.size() == 3);
    for (size_t i = 0; i < 3; ++i) CHECK(distance2(pts[i], again[i]) == 0.0); // %.17g is exact
}

TEST_CASE("xyz: wrong token count errors with the line number") {
    std::istringstream two("1 2\n");
    CHECK_THROWS_WITH_AS(read_xyz(two, "p.xyz"), doctest::Contains("p.xyz:1"),
                         std::runtime_error);
    std::istringstream four("1 2 3 4\n");
    CHECK_THROWS_AS(read_xyz(four, "p.xyz"), std::runtime_error);
}

TEST_CASE("path dispatch recognizes extensions case-insensitively") {
    const IndexedMesh m = make_uv_sphere(6, 8, 0.35);
    write_mesh(m, "dispatch_test.OBJ");
    const IndexedMesh back = read_mesh("dispatch_test.OBJ");
    CHECK(back.face_count() == m.face_count());
    std::remove("dispatch_test.OBJ");
    CHECK_THROWS_AS(read_mesh("missing_file.obj"), std::runtime_error);
    CHECK_THROWS_AS(read_mesh("unknown.ply"), std::runtime_error);
}
