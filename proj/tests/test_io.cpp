#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "slcrigid/catalog.hpp"
#include "slcrigid/io.hpp"

using namespace slc;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(SLCRIGID_SAMPLES) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorCode code_of(const std::string& text) {
  try {
    parse_document(text);
  } catch (const InputError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << text;
  return ErrorCode::schema;
}

}  // namespace

TEST(Document, CanonicalSamplesRoundTripByteForByte) {
  for (const char* name : {"lc5.json", "lc5_placed.json", "c3_rigid_dependent.json", "p1phi0.json", "p1phi1.json",
                           "p2phi2.json", "c3_generated.json", "c2_fixed_edge.json"}) {
    const std::string text = slurp(name);
    ASSERT_FALSE(text.empty()) << name;
    const Document doc = parse_document(text);
    const Framework* fw = doc.framework ? &*doc.framework : nullptr;
    EXPECT_EQ(serialize_document(doc.graph, fw), text) << name;
  }
}

TEST(Document, StructureSurvivesRoundTrip) {
  const SymmetricGraph cs(GroupSpec::reflection(), 3, {{0, 1}, {0, 2}}, {{0, 0, 1}, {1, 1, 0}, {2, 2, 0}}, {},
                          {{0, 2, 1}, {0, 2, 1}});
  const Document back = parse_document(serialize_document(cs));
  EXPECT_EQ(back.graph, cs);
  EXPECT_EQ(back.graph.loop(0).sigma, 1);
  const SymmetricGraph rigid = rigid_without_isostatic_subgraph();
  EXPECT_EQ(parse_document(serialize_document(rigid)).graph, rigid);
}

TEST(Document, Errors) {
  const std::string head = R"({"version":1,"group":{"kind":"cyclic","order":1},"num_vertices":4,)";
  try {
    parse_document(head + R"("edges":[[3,3]],"loops":[]})");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("self-edge must be a loop entry"), std::string::npos);
  }
  EXPECT_EQ(code_of(head + R"("edges":[[0,9]],"loops":[]})"), ErrorCode::index_out_of_range);
  EXPECT_EQ(code_of(head + R"("edges":[[0,"a"]],"loops":[]})"), ErrorCode::schema);
  EXPECT_EQ(code_of(R"({"group":{"kind":"cyclic","order":3},"num_vertices":1,"edges":[],)"
                    R"("loops":[{"id":0,"vertex":0}],"action":{"rotation_vertex_perm":[0],"rotation_loop_perm":[0]}})"),
            ErrorCode::invalid_action);
  EXPECT_EQ(code_of(R"({"group":{"kind":"cyclic","order":2},"num_vertices":3,"edges":[],)"
                    R"("action":{"rotation_vertex_perm":[1,2,0]}})"),
            ErrorCode::not_homomorphism);
  EXPECT_EQ(code_of("{\"group\": "), ErrorCode::schema);
  EXPECT_EQ(code_of(R"({"group":{"kind":"cyclic","order":1},"edges":[]})"), ErrorCode::schema);
  try {
    parse_document("{\n  \"group\": [1,\n}");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Document, AsymmetricPlacementRejected) {
  std::string text = slurp("lc5_placed.json");
  json j = json::parse(text);
  j["placement"]["p"][0][0] = 17;
  EXPECT_EQ(code_of(j.dump()), ErrorCode::precondition);
}

TEST(MoveSpec, Parsing) {
  EXPECT_EQ(parse_move_spec("zero2:0,1"), (Move{MoveKind::zero_two_edges, 0, 1}));
  EXPECT_EQ(parse_move_spec("zeroloop:3"), (Move{MoveKind::zero_edge_loop, 3}));
  EXPECT_EQ(parse_move_spec("split:1,2,3"), (Move{MoveKind::one_edge_split, 1, 2, 3}));
  EXPECT_EQ(parse_move_spec("one_loop_split:4,0"), (Move{MoveKind::one_loop_split, 4, 0}));
  for (const char* bad : {"zero2", "zero2:0", "zero2:0,x", "nope:1", "split:1,2", "zeroloop:1,"})
    EXPECT_THROW(parse_move_spec(bad), InputError) << bad;
}

TEST(Trace, RoundTrip) {
  const Generated gen = generate_random({BaseKind::looped_cycle, 3, 1}, 4, 7);
  const ConstructionTrace t = trace_from_json(to_json(gen.trace));
  EXPECT_EQ(t.moves, gen.trace.moves);
  EXPECT_EQ(t.bases, gen.trace.bases);
  EXPECT_EQ(t.vertex_labels, gen.trace.vertex_labels);
  EXPECT_EQ(replay(t), gen.graph);
}

TEST(Verdict, Rules) {
  const SymmetricGraph lc5 = make_base({BaseKind::looped_cycle, 5, 1});
  EXPECT_EQ(make_verdict(lc5, classify(lc5)).verdict, Verdict::isostatic_certified);
  const SymmetricGraph rigid = rigid_without_isostatic_subgraph();
  const VerdictDocument f = make_verdict(rigid, classify(rigid));
  EXPECT_EQ(f.verdict, Verdict::necessary_conditions_fail);
  EXPECT_EQ(f.rank.rank, 8);
  EXPECT_FALSE(f.positive());
  const SymmetricGraph p1 = make_base({BaseKind::pinned_swapped, 4, 1});
  EXPECT_EQ(make_verdict(p1, classify(p1)).verdict, Verdict::numeric_only);
  const VerdictDocument traced = make_verdict(lc5, classify(lc5), true);
  ASSERT_TRUE(traced.trace);
  EXPECT_TRUE(traced.trace->moves.empty());
}
