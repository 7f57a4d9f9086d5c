#include <gtest/gtest.h>

#include "mcgs/search_config.hpp"
#include "mcgs/types.hpp"

using namespace mcgs;

TEST(SearchConfig, Defaults) {
  const SearchConfig c;
  EXPECT_EQ(c.q_epsilon, 0.01);
  EXPECT_EQ(c.q_weight, 2.0);
  EXPECT_EQ(c.eps_greedy, 0.01);
  EXPECT_EQ(c.eps_checks, 0.01);
  EXPECT_EQ(c.c_puct_init, 2.5);
  EXPECT_EQ(c.c_puct_base, 19652.0);
  EXPECT_EQ(c.node_tau, 1.7);
  EXPECT_EQ(c.tau, 0.0);
  EXPECT_EQ(c.mini_batch, 16u);
  EXPECT_EQ(c.virtual_loss, 1.0);
  EXPECT_EQ(c.q_init, -1.0);
  EXPECT_EQ(c.value_min, -1.0);
  EXPECT_EQ(c.value_max, 1.0);
  EXPECT_EQ(c.dirichlet_epsilon, 0.0);
  EXPECT_TRUE(c.transpositions && c.terminal_solver && c.explore && c.check_enhance && c.q_boost);
}

TEST(SearchConfig, TreePuctTurnsEveryFeatureOff) {
  const SearchConfig c = SearchConfig::tree_puct();
  EXPECT_FALSE(c.transpositions || c.terminal_solver || c.explore || c.check_enhance || c.q_boost);
  EXPECT_EQ(c.c_puct_init, 2.5);
}

TEST(SearchConfig, BothSpellings) {
  SearchConfig c;
  c.set("q-epsilon", "0.05");
  EXPECT_EQ(c.q_epsilon, 0.05);
  c.set("q_epsilon", " 0.02 ");
  EXPECT_EQ(c.q_epsilon, 0.02);
  c.set("budget-sims", "123");
  EXPECT_EQ(c.budget.kind, BudgetKind::kSimulations);
  EXPECT_EQ(c.budget.amount, 123u);
  c.set("transpositions", "off");
  EXPECT_FALSE(c.transpositions);
  c.set("q_boost", "no");
  EXPECT_FALSE(c.q_boost);
}

TEST(SearchConfig, Rejections) {
  SearchConfig c;
  EXPECT_THROW(c.set("q-epsilonn", "0.1"), ConfigError);
  EXPECT_THROW(c.set("q-epsilon", "abc"), ConfigError);
  EXPECT_THROW(c.set("mini-batch", "-3"), ConfigError);
  EXPECT_THROW(SearchConfig{}.set("mini-batch", "0"), ConfigError);
  EXPECT_THROW(SearchConfig{}.set("node-tau", "0"), ConfigError);
  EXPECT_THROW(SearchConfig{}.set("tau", "-1"), ConfigError);
  EXPECT_THROW(SearchConfig{}.set("threads", "0"), ConfigError);
  EXPECT_THROW(c.set("explore", "maybe"), ConfigError);
}

TEST(SearchConfig, DumpRoundTrip) {
  SearchConfig a;
  a.set("q-weight", "1.25");
  a.set("node-tau", "0.3333333333333333");
  a.set("budget-ms", "250");
  a.set("check-enhance", "false");
  a.set("seed", "42");
  const auto dumped = a.dump();
  EXPECT_EQ(dumped.at("q-epsilon"), "0.01");
  EXPECT_EQ(dumped.at("budget-ms"), "250");
  SearchConfig b;
  for (const auto& [k, v] : dumped) {
    if (k == "value-min" || k == "value-max") continue;  // fixed range
    b.set(k, v);
  }
  EXPECT_EQ(b.dump(), dumped);
}

TEST(KeyValues, ParsesCommentsAndBlankLines) {
  const auto kv = parse_key_values("# header\n\ngame = tictactoe\n  q-weight=2.5 # trailing\r\nname=x y\n");
  ASSERT_EQ(kv.size(), 3u);
  EXPECT_EQ(kv[0], (std::pair<std::string, std::string>{"game", "tictactoe"}));
  EXPECT_EQ(kv[1], (std::pair<std::string, std::string>{"q-weight", "2.5"}));
  EXPECT_EQ(kv[2], (std::pair<std::string, std::string>{"name", "x y"}));
  EXPECT_THROW(parse_key_values("novalue\n"), ConfigError);
  EXPECT_THROW(parse_key_values(" = 3\n"), ConfigError);
}
