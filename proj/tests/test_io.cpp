#include "doctest.h"

#include "bk/error.hpp"
#include "bk/io.hpp"

#include "support.hpp"

using namespace bk;

namespace {

ErrorCode schema_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("group documents round-trip") {
    for (const auto& named : group_catalog(24)) {
        const GroupPtr back = group_from_json(group_to_json(*named.group));
        CHECK(back->order() == named.group->order());
        CHECK(back->generators() == named.group->generators());
    }
    CHECK(element_label(*symmetric_group(3), 0) == "()");
}

TEST_CASE("field elements serialize as digit lists") {
    const FieldSpec k = make_field(3, 2);
    CHECK(ffelem_to_json(k, k.from_code(7)) == Json::array({1, 2}));
    for (std::uint32_t c = 0; c < k.q(); ++c) CHECK(ffelem_from_json(k, ffelem_to_json(k, k.from_code(c))) == k.from_code(c));
    const FieldSpec f5 = make_field(5, 1);
    CHECK(ffelem_from_json(f5, Json(3)) == f5.from_int(3));
    CHECK(field_from_json(field_to_json(k)) == k);
}

TEST_CASE("model documents round-trip") {
    const ModelGN h = heisenberg_model(2, 5, 25);
    const ModelGN back = model_from_json(model_to_json(h));
    CHECK(back.d() == 5);
    CHECK(back.q == 25);
    CHECK(back.V.generators().front() == h.V.generators().front());
    CHECK(model_to_json(back) == model_to_json(h));

    const ModelGN c = cyclic_model(7, 2, 2);
    CHECK(model_from_json(model_to_json(c)).d() == 0);
}

TEST_CASE("cyclotomic and series documents round-trip") {
    const CycloNum x = CycloNum::zeta(7, 3) * CycloNum(Rational(-5, 3)) + CycloNum(2);
    CHECK(cyclo_from_json(cyclo_to_json(x)) == x);
    CHECK(cyclo_to_json(CycloNum(Rational(1, 2)))["m"] == 1);

    LaurentPoly f(3);
    f.set_coeff(-2, CycloNum::zeta(3, 1));
    f.set_coeff(4, CycloNum(7));
    const Json jf = laurent_to_json(f);
    CHECK(jf["terms"].contains("-2"));
    CHECK(laurent_from_json(jf) == f);

    const RatFuncT r = RatFuncT::reduced(testing::poly({1, 0, 3}), 2, 2);
    CHECK(ratfunc_from_json(ratfunc_to_json(r)) == r);
}

TEST_CASE("module and catalog documents round-trip") {
    const Catalog cat = example_catalog(ExampleId::parse("s3_reflection(3)"));
    const Catalog back = catalog_from_json(catalog_to_json(cat));
    CHECK(catalog_to_json(back) == catalog_to_json(cat));
    REQUIRE(back.modules.size() == cat.modules.size());
    for (std::size_t i = 0; i < cat.modules.size(); ++i) {
        const auto a = build_module(cat.model, cat.modules[i], {});
        const auto b = build_module(back.model, back.modules[i], {});
        CHECK(a.dims == b.dims);
    }

    const ModuleDoc single = module_from_json(module_to_json(cat.model, cat.module("Sym(V)")));
    CHECK(single.module.presentation.relations.size() == cat.module("Sym(V)").presentation.relations.size());
    CHECK(modules_from_json(module_to_json(cat.model, cat.module("k"))).modules.front().name == "k");
}

TEST_CASE("schema violations are reported as Schema") {
    CHECK(schema_code([] { parse_json("{not json"); }) == ErrorCode::Schema);
    CHECK(schema_code([] { field_from_json(Json{{"p", 3}}); }) == ErrorCode::Schema);
    CHECK(schema_code([] { field_from_json(Json{{"p", 3}, {"s", 1}, {"extra", 0}}); }) == ErrorCode::Schema);
    CHECK(schema_code([] { group_from_json(Json{{"points", 3}, {"generators", Json::parse("[[0, 0, 1]]")}}); }) == ErrorCode::Schema);
    const FieldSpec k = make_field(3, 1);
    CHECK(schema_code([&] { ffelem_from_json(k, Json::array({1, 2, 0})); }) == ErrorCode::Schema);
}

TEST_CASE("hall jobs") {
    Json subgroup = Json::array();
    subgroup.push_back(Json::array({1, 2, 0}));
    const Json doc = {{"group", group_to_json(*symmetric_group(3))}, {"subgroup", subgroup}, {"p", 3}, {"q", 3}};
    const HallJob job = hall_job_from_json(doc);
    CHECK(job.subgroup.size() == 3);
    const HallReport r = hall_check(*job.group, job.subgroup, job.p, job.q);
    CHECK(hall_to_json(r, *job.group)["bijection"].size() == 2);
}
