#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "sticky_manet/policy.hpp"

namespace sticky_manet {
namespace {

std::set<GroupId> groups(std::initializer_list<std::uint16_t> ids) {
  std::set<GroupId> out;
  for (auto g : ids) out.insert(GroupId{g});
  return out;
}

Policy make_policy(std::uint32_t originator, std::initializer_list<std::uint16_t> permitted,
                   std::uint16_t version = 0) {
  return Policy{NodeId{originator}, groups(permitted), version};
}

Policy random_policy(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> node(0, 1000);
  std::uniform_int_distribution<std::uint16_t> version(0, 0xffff);
  std::uniform_int_distribution<int> size(0, 12);
  std::uniform_int_distribution<std::uint16_t> group(0, 20);
  Policy p{NodeId{node(rng)}, {}, version(rng)};
  for (int i = size(rng); i > 0; --i) p.permitted.insert(GroupId{group(rng)});
  return p;
}

TEST(EvaluatePolicy, PermittedGroupIsAllowed) {
  EXPECT_EQ(evaluate_policy(make_policy(0, {1}), GroupId{1}), Decision::kAllow);
}

TEST(EvaluatePolicy, OtherGroupIsDenied) {
  EXPECT_EQ(evaluate_policy(make_policy(0, {1}), GroupId{2}), Decision::kDeny);
}

TEST(EvaluatePolicy, EmptyPolicyDeniesEverything) {
  const Policy empty = make_policy(0, {});
  for (std::uint16_t g = 0; g < 64; ++g) {
    EXPECT_EQ(evaluate_policy(empty, GroupId{g}), Decision::kDeny) << g;
  }
}

TEST(MergePolicy, IntersectsPermittedSets) {
  EXPECT_EQ(merge_policy(make_policy(0, {1, 2}), make_policy(0, {1})).permitted, groups({1}));
}

TEST(MergePolicy, IdenticalSetsAreUnchanged) {
  const Policy p = make_policy(3, {1, 4, 7});
  EXPECT_EQ(merge_policy(p, p).permitted, p.permitted);
}

TEST(MergePolicy, DisjointSetsYieldEmpty) {
  EXPECT_TRUE(merge_policy(make_policy(0, {2}), make_policy(0, {1})).permitted.empty());
}

TEST(MergePolicy, VersionAndOriginator) {
  const Policy merged = merge_policy(make_policy(9, {1}, 4), make_policy(0, {1}, 7));
  EXPECT_EQ(merged.originator, NodeId{0});
  EXPECT_EQ(merged.version, 8);
}

TEST(MergePolicy, VersionSaturates) {
  const Policy merged = merge_policy(make_policy(0, {1}, 0xffff), make_policy(0, {1}, 3));
  EXPECT_EQ(merged.version, 0xffff);
}

// Layout: length u16 | originator u32 | version u16 | count u16 | groups u16...
TEST(EncodePolicy, SingleGroupGoldenBytes) {
  const std::vector<std::uint8_t> expected = {
      0x00, 0x0c,              // length 12
      0x00, 0x00, 0x00, 0x00,  // originator 0
      0x00, 0x00,              // version 0
      0x00, 0x01,              // one group
      0x00, 0x01,              // G1
  };
  EXPECT_EQ(encode_policy(make_policy(0, {1})), expected);
}

TEST(EncodePolicy, MultiGroupGoldenBytes) {
  const std::vector<std::uint8_t> expected = {
      0x00, 0x10, 0x00, 0x01, 0x02, 0x03, 0x00, 0x05, 0x00, 0x03,
      0x00, 0x01, 0x00, 0x02, 0x01, 0x00,
  };
  EXPECT_EQ(encode_policy(make_policy(0x00010203, {256, 2, 1}, 5)), expected);
}

TEST(EncodePolicy, EmptySetIsHeaderOnly) {
  const auto bytes = encode_policy(make_policy(0, {}));
  ASSERT_EQ(bytes.size(), 10u);
  EXPECT_EQ(bytes[0], 0x00);
  EXPECT_EQ(bytes[1], 0x0a);
  EXPECT_EQ(bytes[8], 0x00);
  EXPECT_EQ(bytes[9], 0x00);
}

TEST(EncodePolicy, CapacityExceeded) {
  Policy p{NodeId{0}, {}, 0};
  for (std::size_t g = 0; g <= kMaxPermittedGroups; ++g) p.permitted.insert(GroupId{static_cast<std::uint16_t>(g)});
  EXPECT_THROW(encode_policy(p), CapacityExceeded);
  p.permitted.erase(p.permitted.begin());
  const auto bytes = encode_policy(p);
  EXPECT_EQ(bytes.size(), 0xffffu - 1);
  EXPECT_EQ(decode_policy(bytes), p);
}

TEST(DecodePolicy, GoldenBytes) {
  const std::vector<std::uint8_t> bytes = {0x00, 0x0c, 0x00, 0x00, 0x00, 0x00,
                                           0x00, 0x00, 0x00, 0x01, 0x00, 0x01};
  EXPECT_EQ(decode_policy(bytes), make_policy(0, {1}));
}

TEST(DecodePolicy, RejectsEmptyBuffer) {
  EXPECT_THROW(decode_policy({}), MalformedPolicy);
}

TEST(DecodePolicy, RejectsTruncatedBuffer) {
  const auto bytes = encode_policy(make_policy(0, {1, 2}));
  for (std::size_t n = 0; n < bytes.size(); ++n) {
    EXPECT_THROW(decode_policy(std::span(bytes).first(n)), MalformedPolicy) << n;
  }
}

TEST(DecodePolicy, RejectsTrailingBytes) {
  auto bytes = encode_policy(make_policy(0, {1}));
  bytes.push_back(0);
  EXPECT_THROW(decode_policy(bytes), MalformedPolicy);
  bytes[1] = 13;  // length now covers the extra byte, count does not
  EXPECT_THROW(decode_policy(bytes), MalformedPolicy);
}

TEST(DecodePolicy, RejectsCountOverrun) {
  auto bytes = encode_policy(make_policy(0, {1}));
  bytes[9] = 2;
  EXPECT_THROW(decode_policy(bytes), MalformedPolicy);
}

TEST(DecodePolicy, RejectsUnsortedOrDuplicateGroups) {
  std::vector<std::uint8_t> bytes = {0x00, 0x0e, 0, 0, 0, 0, 0, 0, 0x00, 0x02, 0x00, 0x02, 0x00, 0x01};
  EXPECT_THROW(decode_policy(bytes), MalformedPolicy);
  bytes[13] = 0x02;
  EXPECT_THROW(decode_policy(bytes), MalformedPolicy);
}

TEST(PolicyProperties, AlgebraAndRoundTrip) {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 2000; ++i) {
    const Policy a = random_policy(rng);
    const Policy b = random_policy(rng);
    const Policy c = random_policy(rng);

    for (std::uint16_t g = 0; g <= 21; ++g) {
      EXPECT_EQ(evaluate_policy(a, GroupId{g}) == Decision::kAllow, a.permitted.contains(GroupId{g}));
    }
    const Policy ab = merge_policy(a, b);
    EXPECT_TRUE(std::includes(a.permitted.begin(), a.permitted.end(), ab.permitted.begin(), ab.permitted.end()));
    EXPECT_TRUE(std::includes(b.permitted.begin(), b.permitted.end(), ab.permitted.begin(), ab.permitted.end()));
    EXPECT_GE(ab.version, std::max(a.version, b.version));
    EXPECT_EQ(ab.permitted, merge_policy(b, a).permitted);
    EXPECT_EQ(merge_policy(ab, c).permitted, merge_policy(a, merge_policy(b, c)).permitted);
    EXPECT_EQ(merge_policy(a, a).permitted, a.permitted);
    EXPECT_EQ(decode_policy(encode_policy(a)), a);
  }
}

}  // namespace
}  // namespace sticky_manet
