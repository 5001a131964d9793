#include "percolate/beta.hpp"

#include <gtest/gtest.h>

namespace percolate {
namespace {

TEST(Beta, ParsesDecimalsExactly) {
  EXPECT_EQ(Beta::parse("0.5"), Beta::ratio(1, 2));
  EXPECT_EQ(Beta::parse(".25"), Beta::ratio(1, 4));
  EXPECT_EQ(Beta::parse("1"), Beta::ratio(1, 1));
  EXPECT_EQ(Beta::parse("1.0"), Beta::ratio(1, 1));
  EXPECT_EQ(Beta::parse("9e-1"), Beta::ratio(9, 10));
  EXPECT_EQ(Beta::parse("1/3"), Beta::ratio(1, 3));
  EXPECT_EQ(Beta::parse("0.29").restricted_size(100), 29u);
  EXPECT_EQ(Beta::parse("0.7").restricted_size(10), 7u);
  EXPECT_EQ(Beta::parse("1/3").restricted_size(10), 3u);
}

TEST(Beta, RejectsOutOfRange) {
  for (const char* bad : {"0", "0.0", "1.5", "-0.5", "abc", "", "0.5.1", "2/1", "1/0"}) {
    EXPECT_THROW(Beta::parse(bad), std::invalid_argument) << bad;
  }
  EXPECT_THROW(Beta::from_double(0.0), std::invalid_argument);
  EXPECT_THROW(Beta::from_double(1.01), std::invalid_argument);
}

TEST(Beta, FromDoubleRoundsToNineDigits) {
  EXPECT_EQ(Beta::from_double(0.9), Beta::parse("0.9"));
  EXPECT_EQ(Beta::from_double(0.29).restricted_size(100), 29u);
  EXPECT_EQ(Beta::parse("0.25").to_string(), "0.25");
}

}  // namespace
}  // namespace percolate
