#include <doctest.h>

#include <string>

#include "fmn/frames.hpp"
#include "fmn/render.hpp"

using namespace fmn;

namespace {

int count_occurrences(const std::string& haystack, const std::string& needle) {
  int count = 0;
  size_t pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

}  // namespace

TEST_CASE("empty-neighbour frame renders a single centred label") {
  const Bfmn net = Bfmn::build({"alone", "x", "y"}, {{"x", "y", 1}});
  const SemanticFrame frame = semantic_frame(net, "alone");
  const RenderedFrame out = render_frame(frame);
  CHECK(count_occurrences(out.svg, "<text") == 1);
  CHECK(out.svg.find("<path") == std::string::npos);
  CHECK(out.svg.find("x=\"320.00\" y=\"320.00\"") != std::string::npos);  // canvas centre
  CHECK(out.svg.find(">alone<") != std::string::npos);
}

TEST_CASE("rendering is deterministic") {
  const Bfmn net = Bfmn::build(
      {"t", "a", "b", "c"},
      {{"t", "a", 2}, {"t", "b", 1}, {"t", "c", 3}, {"a", "b", 1}},
      {{"t", -1}, {"a", 1}, {"b", 0}, {"c", -1}});
  const SemanticFrame frame = semantic_frame(net, "t");
  const RenderedFrame first = render_frame(frame);
  const RenderedFrame second = render_frame(semantic_frame(net, "t"));
  CHECK(first.svg == second.svg);
  CHECK(first.dot == second.dot);
  CHECK(first.svg.find("<script") == std::string::npos);
}

TEST_CASE("exactly one purple path for exactly one contrastive pair") {
  const Bfmn net = Bfmn::build(
      {"t", "p", "n", "z1", "z2", "z3"},
      {{"t", "p", 1}, {"t", "n", 1}, {"t", "z1", 1}, {"t", "z2", 1}, {"t", "z3", 1}, {"p", "n", 1}},
      {{"t", 0}, {"p", 1}, {"n", -1}, {"z1", 0}, {"z2", 0}, {"z3", 0}});
  const SemanticFrame frame = semantic_frame(net, "t");
  int contrastive = 0;
  for (const auto& e : frame.edges) contrastive += e.cls == EdgeClass::contrastive;
  REQUIRE(contrastive == 1);
  const RenderedFrame out = render_frame(frame);
  CHECK(count_occurrences(out.svg, "stroke=\"purple\"") == 1);
  CHECK(count_occurrences(out.dot, "color=purple") == 1);
}

TEST_CASE("svg colour assignment matches classify_edge and labels") {
  const Bfmn net = Bfmn::build(
      {"t", "p", "n", "z"},
      {{"t", "p", 1}, {"t", "n", 1}, {"t", "z", 1}, {"p", "n", 1}, {"p", "z", 1}, {"n", "z", 1}},
      {{"t", 1}, {"p", 1}, {"n", -1}, {"z", 0}});
  const SemanticFrame frame = semantic_frame(net, "t");
  const RenderedFrame out = render_frame(frame);

  int expected_by_colour[4] = {0, 0, 0, 0};  // positive, negative, neutral, contrastive
  for (const auto& e : frame.edges) expected_by_colour[static_cast<int>(e.cls)]++;
  CHECK(count_occurrences(out.svg, "stroke=\"cyan\"") ==
        expected_by_colour[static_cast<int>(EdgeClass::positive)]);
  CHECK(count_occurrences(out.svg, "stroke=\"red\"") ==
        expected_by_colour[static_cast<int>(EdgeClass::negative)]);
  CHECK(count_occurrences(out.svg, "stroke=\"black\"") ==
        expected_by_colour[static_cast<int>(EdgeClass::neutral)]);
  CHECK(count_occurrences(out.svg, "stroke=\"purple\"") ==
        expected_by_colour[static_cast<int>(EdgeClass::contrastive)]);

  // node text colours: negative blue, positive cyan, neutral black
  int neg_nodes = 0;
  int pos_nodes = 0;
  int neu_nodes = 0;
  auto tally = [&](int label) {
    if (label < 0) ++neg_nodes;
    else if (label > 0) ++pos_nodes;
    else ++neu_nodes;
  };
  tally(frame.target_label);
  for (const auto& nb : frame.neighbours) tally(nb.label);
  CHECK(count_occurrences(out.svg, "fill=\"blue\"") == neg_nodes);
  CHECK(count_occurrences(out.svg, "fill=\"cyan\"") == pos_nodes);
  CHECK(count_occurrences(out.svg, "fill=\"black\"") == neu_nodes);
}

TEST_CASE("xml escaping of node names") {
  const Bfmn net = Bfmn::build({"a&b", "x<y"}, {{"a&b", "x<y", 1}});
  const SemanticFrame frame = semantic_frame(net, "a&b");
  const RenderedFrame out = render_frame(frame);
  CHECK(out.svg.find("a&amp;b") != std::string::npos);
  CHECK(out.svg.find("x&lt;y") != std::string::npos);
}
