#include <gtest/gtest.h>

#include "cloudlab/compose.hpp"
#include "cloudlab/datasets.hpp"
#include "cloudlab/errors.hpp"
#include "cloudlab/states.hpp"

using namespace cloudlab;

namespace {

Relation relation(const Cloud& c, const char* a, const char* b, StateKind kind) {
  return classify_pair(c, c.index_of(a), c.index_of(b), kind);
}

TEST(Identification, Parse) {
  const auto id = Identification::parse("b1=a1, b2 = a2,");
  ASSERT_EQ(id.pairs.size(), 2U);
  EXPECT_EQ(id.pairs[1], (std::pair<std::string, std::string>{"b2", "a2"}));
  EXPECT_THROW(Identification::parse("b1a1"), CloudError);
  EXPECT_THROW(Identification::parse("=a1"), CloudError);
}

TEST(Paste, RenamesAndMergesContexts) {
  const Cloud a = CloudBuilder("A").context({"x", "y", "z"}).terminals("x", "z").build();
  const Cloud b = CloudBuilder("B").context({"p", "q", "r"}).context({"r", "s"}).build();
  const PasteResult r = paste_with_report(a, b, Identification::parse("p=x,q=y,r=z"));
  EXPECT_EQ(r.cloud.vertex_count(), 4U);
  EXPECT_EQ(r.cloud.context_count(), 2U);
  EXPECT_EQ(r.merged_contexts, std::vector<std::size_t>{0});
  EXPECT_EQ(r.renaming.at("s"), "s'");
  EXPECT_EQ(*r.cloud.terminals(), (VertexPair{0, 2}));
  EXPECT_THROW(paste(a, b, Identification::parse("p=x,q=x")), CloudError);
  EXPECT_THROW(paste(a, b, Identification::parse("zz=x")), CloudError);
  EXPECT_THROW(paste(a, b, Identification::parse("p=zz")), CloudError);
}

TEST(Paste, SuffixAvoidsExistingNames) {
  const Cloud a = CloudBuilder("A").context({"x", "x'"}).build();
  const Cloud b = CloudBuilder("B").context({"x", "w"}).build();
  const PasteResult r = paste_with_report(a, b, Identification::parse("w=x"));
  EXPECT_EQ(r.renaming.at("x"), "x''");
}

TEST(Paste, MirroredBugsStayTifs) {
  const Cloud bug = dataset("bug").cloud;
  const Cloud twice = paste(bug, bug, Identification::parse("a=b,b=a"));
  EXPECT_EQ(relation(twice, "a", "b", StateKind::II), Relation::Tifs);
  EXPECT_EQ(relation(twice, "b", "a", StateKind::II), Relation::Tifs);
}

TEST(Paste, ChainOfTwoContextsIsEquivalent) {
  const Cloud a = CloudBuilder("A").context({"a", "x"}).build();
  const Cloud b = CloudBuilder("B").context({"y", "b"}).build();
  const Cloud c = paste(a, b, Identification::parse("y=x"));
  EXPECT_EQ(relation(c, "a", "b'", StateKind::II), Relation::Equivalent);
  EXPECT_EQ(relation(c, "a", "x", StateKind::II), Relation::Opposite);
}

TEST(Paste, TifsAndTitsGiveValueIndefiniteness) {
  const Cloud both = paste(dataset("tifs38").cloud, dataset("tits38").cloud, Identification::parse("a=a,b=b"));
  EXPECT_EQ(relation(both, "a", "b", StateKind::III), Relation::ValueIndefinite);
  EXPECT_EQ(relation(both, "a", "b", StateKind::II), Relation::NoStateWithATrue);
}

TEST(Paste, SerialTitsChain) {
  const Cloud tits = dataset("tits38").cloud;
  const Cloud chain = paste(tits, tits, Identification::parse("a=b"));
  EXPECT_EQ(relation(chain, "a", "b'", StateKind::II), Relation::Tits);
}

TEST(Paste, RepresentationsFollowRenaming) {
  const DatasetEntry ff = dataset("firefly");
  const PasteResult r = paste_with_report(ff.cloud, ff.cloud, Identification::parse("a=b"));
  const Representation rep = paste_representations(*ff.representation, *ff.representation, r);
  EXPECT_EQ(rep.at("a"), ff.representation->at("a"));
  EXPECT_EQ(rep.at("b'"), ff.representation->at("b"));
}

TEST(Extend, Tifs38ConstructionCollidesEverywhere) {
  const DatasetEntry e = dataset("tifs38");
  const Extension x = extend_to_tits(e.cloud, *e.representation, "a", "b");
  EXPECT_TRUE(x.report.new_vertices.empty());
  EXPECT_EQ(x.c, "p2");
  EXPECT_EQ(x.d, "p3");
  EXPECT_EQ(x.e, "p1");
  EXPECT_EQ(x.report.existing_contexts.size(), 2U);
  EXPECT_EQ(x.cloud.context_count(), e.cloud.context_count());
  EXPECT_EQ(relation(x.cloud, "a", "p3", StateKind::III), Relation::Tits);
}

TEST(Extend, OpenGadgetGainsOnlyC) {
  const DatasetEntry e = dataset("hh10_open");
  const Extension x = extend_to_tits(e.cloud, *e.representation, "u1", "u22");
  EXPECT_EQ(x.report.new_vertices, std::vector<std::string>{"c"});
  EXPECT_EQ(x.d, "u20");
  EXPECT_EQ(x.e, "u3");
  EXPECT_EQ(x.report.new_contexts.size(), 2U);
  EXPECT_TRUE(verify_representation(x.cloud, x.representation).ok());
  EXPECT_EQ(relation(x.cloud, "u1", "u20", StateKind::II), Relation::Tits);
  EXPECT_EQ(enumerate_states(x.cloud).size(), enumerate_states(dataset("hh10").cloud).size());
}

TEST(Extend, FireflyAlreadyContainsTheConstruction) {
  const DatasetEntry e = dataset("firefly");
  const Extension x = extend_to_tits(e.cloud, *e.representation, "a", "b");
  EXPECT_TRUE(x.report.new_vertices.empty());
  EXPECT_EQ(x.c, "v3");
  EXPECT_EQ(x.d, "v4");
  EXPECT_EQ(x.e, "v2");
  EXPECT_EQ(x.cloud.vertex_count(), 5U);
}

TEST(Extend, FreshVerticesAndErrors) {
  const Cloud c = CloudBuilder("pair").context({"a", "x"}).context({"b", "y"}).build();
  Representation rep(CoordinateMode::Exact);
  auto ray = [](long long x, long long y, long long z) { return Ray::exact({QSqrt2(x), QSqrt2(y), QSqrt2(z)}); };
  rep.set("a", ray(1, 0, 0));
  rep.set("x", ray(0, 1, 1));
  rep.set("b", ray(1, 1, 0));
  rep.set("y", ray(1, -1, 2));
  const Extension x = extend_to_tits(c, rep, "a", "b");
  EXPECT_EQ(x.report.new_vertices, (std::vector<std::string>{"c", "d", "e"}));
  EXPECT_EQ(x.cloud.vertex_count(), 7U);
  EXPECT_EQ(*x.cloud.terminals(), (VertexPair{x.cloud.index_of("a"), x.cloud.index_of("d")}));
  EXPECT_TRUE(verify_representation(x.cloud, x.representation).ok());
  ExtensionOptions named;
  named.c_name = "x";
  EXPECT_EQ(extend_to_tits(c, rep, "a", "b", named).c, "x_2");
  EXPECT_THROW(extend_to_tits(c, rep, "a", "x"), GeometryError);
  EXPECT_THROW(extend_to_tits(c, rep, "a", "zz"), CloudError);
}

}  // namespace
