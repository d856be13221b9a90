// SPDX-License-Identifier: Apache-2.0

#include "efp/instance_io.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "efp/generators.h"
#include "test_support.h"

namespace efp {
namespace {

constexpr const char* kThreeItemMarketText =
    "EFP 1\n"
    "items 3\n"
    "bidders 4\n"
    "edge 1 1 4\n"
    "edge 1 2 5\n"
    "edge 1 3 6\n"
    "edge 2 2 7\n"
    "edge 2 4 6\n"
    "edge 3 1 3\n"
    "edge 3 3 2\n"
    "edge 3 4 2\n";

TEST(InstanceIoTest, ThreeItemMarketGolden) {
  EXPECT_EQ(serialize_instance(testing::ThreeItemMarket()), kThreeItemMarketText);
  EXPECT_EQ(parse_instance(kThreeItemMarketText), testing::ThreeItemMarket());
}

TEST(InstanceIoTest, FormatValuation) {
  EXPECT_EQ(format_valuation(4), "4");
  EXPECT_EQ(format_valuation(12.25), "12.25");
  EXPECT_EQ(format_valuation(0.000000001), "0.000000001");
  EXPECT_EQ(format_valuation(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(format_valuation(1234567.5), "1234567.5");
}

TEST(InstanceIoTest, RoundTripGeneratedInstances) {
  int count = 0;
  for (MarketModel model : {MarketModel::kCharacteristics, MarketModel::kNeighborhood,
                            MarketModel::kPopularity}) {
    for (int n : {2, 5, 10, 20}) {
      for (Seed seed = 1; count < 1000 && seed <= 84; ++seed, ++count) {
        const Instance inst = generate(preset(model, n), seed);
        const std::string text = serialize_instance(inst);
        const Instance back = parse_instance(text);
        ASSERT_EQ(back, inst) << to_string(model) << " n=" << n << " seed=" << seed;
        ASSERT_EQ(serialize_instance(back), text);
      }
    }
  }
  EXPECT_GE(count, 1000);
}

TEST(InstanceIoTest, UnquantizedValuesReachAFixedPoint) {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    std::vector<Valuation> edges = {{0, 0, rng.uniform_positive(50)}, {1, 1, rng.uniform_positive(50)}};
    const Instance inst = Instance::FromEdges(2, 2, edges);
    const Instance once = parse_instance(serialize_instance(inst));
    for (std::size_t e = 0; e < 2; ++e) {
      EXPECT_NEAR(once.edges()[e].value, inst.edges()[e].value, 5e-10);
    }
    EXPECT_EQ(parse_instance(serialize_instance(once)), once);
  }
}

TEST(InstanceIoTest, AcceptsCrlfAndMissingFinalNewline) {
  std::string crlf;
  for (char c : std::string(kThreeItemMarketText)) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  EXPECT_EQ(parse_instance(crlf), testing::ThreeItemMarket());
  std::string trimmed = kThreeItemMarketText;
  trimmed.pop_back();
  EXPECT_EQ(parse_instance(trimmed), testing::ThreeItemMarket());
}

int ErrorLine(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const FormatError& e) {
    return e.line();
  }
  return -1;
}

TEST(InstanceIoTest, RejectsMalformedText) {
  EXPECT_EQ(ErrorLine("EFP 2\nitems 1\nbidders 1\n"), 1);
  EXPECT_EQ(ErrorLine("XYZ\n"), 1);
  EXPECT_EQ(ErrorLine(""), 1);
  EXPECT_EQ(ErrorLine("EFP 1\nbidders 1\nitems 1\n"), 2);
  EXPECT_EQ(ErrorLine("EFP 1\nitems x\nbidders 1\n"), 2);
  EXPECT_EQ(ErrorLine("EFP 1\nitems 1\nbidders 1\nedge 1 1\n"), 4);
  EXPECT_EQ(ErrorLine("EFP 1\nitems 1\nbidders 1\nedge 1 1 2 3\n"), 4);
  EXPECT_EQ(ErrorLine("EFP 1\nitems 1\nbidders 1\nedge 1 1 abc\n"), 4);
  EXPECT_EQ(ErrorLine("EFP 1\nitems 1\nbidders 1\n\nedge 1 1 2\n"), 4);
}

TEST(InstanceIoTest, ContentErrorsUseCoreTypes) {
  EXPECT_THROW(parse_instance("EFP 1\nitems 1\nbidders 1\nedge 1 1 2\nedge 1 1 3\n"),
               DuplicateEdgeError);
  EXPECT_THROW(parse_instance("EFP 1\nitems 1\nbidders 1\nedge 1 1 -2\n"),
               NonPositiveValueError);
  EXPECT_THROW(parse_instance("EFP 1\nitems 1\nbidders 1\nedge 2 1 2\n"), IndexOutOfRangeError);
  EXPECT_THROW(parse_instance("EFP 1\nitems 1\nbidders 1\nedge 0 1 2\n"), IndexOutOfRangeError);
}

TEST(InstanceIoTest, FileHelpers) {
  const auto path = std::filesystem::temp_directory_path() / "efp_io_test.txt";
  write_instance_file(path.string(), testing::ThreeItemMarket());
  EXPECT_EQ(read_instance_file(path.string()), testing::ThreeItemMarket());
  std::filesystem::remove(path);
  EXPECT_THROW(read_instance_file(path.string()), Error);
}

}  // namespace
}  // namespace efp
