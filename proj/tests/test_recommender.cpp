#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include <gcx/recommender.hpp>
#include <gcx/synthetic.hpp>

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace gcx;

namespace {

RatingsDataset cosine_fixture() {
  DatasetBuilder b;
  b.add(1, 1, 1.0);
  b.add(1, 2, 0.5);
  b.add(2, 1, 0.5);
  b.add(2, 2, 1.0);
  b.add(2, 3, 0.8);
  b.add(3, 3, 1.0);
  b.add(3, 4, 0.5);
  return b.build();
}

}  // namespace

TEST_CASE("call meter enforces its budget and stays monotone") {
  CallMeter meter(2, false);
  meter.charge_search();
  meter.charge_search();
  CHECK(meter.search_calls() == 2);
  CHECK_THROWS_AS(meter.charge_search(), BudgetExhausted);
  CHECK(meter.search_calls() == 2);  // the failed charge did not count

  // metric calls bypass the budget unless configured in
  meter.charge_metric();
  CHECK(meter.metric_calls() == 1);
  CHECK(meter.calls_used() == 3);

  CallMeter strict(1, true);
  strict.charge_metric();
  CHECK_THROWS_AS(strict.charge_search(), BudgetExhausted);

  CallMeter zero(0, false);
  CHECK_THROWS_AS(zero.charge_search(), BudgetExhausted);
}

TEST_CASE("predict_user_scores matches the brute-force reference") {
  RatingsDataset ds = cosine_fixture();
  oracle::Ratings r = oracle::snapshot(ds);
  History pseudo = {{1, 1.0}, {2, 0.5}};
  oracle::Profile pseudo_profile = {{1, 1.0}, {2, 0.5}};

  auto scores = predict_user_scores(ds, pseudo, 10);
  auto expected = oracle::predict_all(r, pseudo_profile, 10);
  REQUIRE(scores.size() == expected.size());
  for (const auto& s : scores) {
    REQUIRE(expected.count(s.item) == 1);
    CHECK(s.value == doctest::Approx(expected[s.item]).epsilon(1e-14));
  }

  // frozen reference values for this fixture
  REQUIRE(scores.size() == 1);
  CHECK(scores[0].item == 3);
  CHECK(scores[0].value == doctest::Approx(0.31532777388268024).epsilon(1e-13));
}

TEST_CASE("a pseudo-user identical to an existing user has that user as top neighbor") {
  RatingsDataset ds = cosine_fixture();
  History pseudo = {{1, 1.0}, {2, 0.5}};  // exactly user 1's profile

  // With a single neighbor slot only user 1 (similarity 1) survives, so
  // predictions equal user 1's ratings of unseen items: none.
  auto scores = predict_user_scores(ds, pseudo, 1);
  CHECK(scores.empty());

  // With two slots user 2 joins; item 3's score is driven by user 2 alone.
  auto wide = predict_user_scores(ds, pseudo, 2);
  REQUIRE(wide.size() == 1);
  CHECK(wide[0].item == 3);
  CHECK(wide[0].value < 0.8);  // deflated by the perfectly similar non-rater
}

TEST_CASE("orthogonal histories yield an empty score map") {
  RatingsDataset ds = cosine_fixture();
  History pseudo = {{99, 1.0}};  // item nobody rated
  CHECK(predict_user_scores(ds, pseudo, 10).empty());
  CHECK(predict_user_scores(ds, History{}, 10).empty());
}

TEST_CASE("recommend reproduces the oracle list on the four-user fixture") {
  RatingsDataset ds = fixtures::four_user_matrix();
  Group g = fixtures::group12(ds);
  CfRecommender rec(ds, 50);
  CallMeter meter = CallMeter::unlimited();

  RecommendationList list = rec.recommend(group_interactions(ds, g), 10, meter);
  CHECK(meter.search_calls() == 1);

  // Frozen from the independent reference: 110 outscores 120.
  REQUIRE(list.size() == 2);
  CHECK(list.item_at(1) == 110);
  CHECK(list.item_at(2) == 120);
  CHECK(list.score_at(1) == doctest::Approx(0.32293526233417025).epsilon(1e-13));
  CHECK(list.score_at(2) == doctest::Approx(0.2411337063347519).epsilon(1e-13));
  CHECK(list.score_at(1) >= list.score_at(2));

  // No recommended item overlaps the group's interactions.
  for (const auto& e : list.entries()) {
    CHECK(!ds.interacted(1, e.item));
    CHECK(!ds.interacted(2, e.item));
  }
}

TEST_CASE("recommend is pure: identical inputs produce identical lists") {
  RatingsDataset ds = generate_synthetic(30, 40, 0.4, 5);
  Group g = Group::make(ds, {ds.users()[0], ds.users()[1], ds.users()[2]});
  CfRecommender rec(ds, 10);
  CallMeter meter = CallMeter::unlimited();

  auto a = rec.recommend(group_interactions(ds, g), 10, meter);
  auto b = rec.recommend(group_interactions(ds, g), 10, meter);
  CHECK(a == b);
  CHECK(meter.search_calls() == 2);

  // Removing items and adding them back restores the original list.
  std::vector<ItemId> removed = {g.union_items()[0], g.union_items()[2]};
  auto modified = rec.recommend(group_interactions_without(ds, g, removed), 10, meter);
  auto restored = rec.recommend(group_interactions(ds, g), 10, meter);
  CHECK(restored == a);
  (void)modified;
}

TEST_CASE("list invariants hold across random groups and removals") {
  RatingsDataset ds = generate_synthetic(50, 70, 0.3, 21);
  std::vector<UserId> eligible = filter_eligible_users(ds, 8);
  REQUIRE(eligible.size() >= 4);
  CfRecommender rec(ds, 15);
  CallMeter meter = CallMeter::unlimited();

  auto groups = sample_groups(ds, eligible, 4, 10, 77, 8);
  for (const auto& g : groups) {
    // drop every third union item to vary the interaction sets
    std::vector<ItemId> removed;
    for (std::size_t k = 0; k < g.union_items().size(); k += 3) {
      removed.push_back(g.union_items()[k]);
    }
    GroupInteractions gi = group_interactions_without(ds, g, removed);
    RecommendationList list = rec.recommend(gi, 10, meter);

    CHECK(list.size() <= 10);
    std::vector<ItemId> still_interacted = gi.item_union();
    for (std::size_t r = 0; r < list.size(); ++r) {
      const RecEntry& e = list.entries()[r];
      CHECK(e.score > 0.0);
      CHECK(e.score <= 1.0);
      if (r > 0) CHECK(list.entries()[r - 1].score >= e.score);
      CHECK(!std::binary_search(still_interacted.begin(), still_interacted.end(), e.item));
      CHECK(list.rank_of(e.item) == static_cast<int>(r) + 1);
    }
  }
}

TEST_CASE("recommend with budget zero signals exhaustion") {
  RatingsDataset ds = fixtures::four_user_matrix();
  Group g = fixtures::group12(ds);
  CfRecommender rec(ds, 50);
  CallMeter meter(0, false);
  CHECK_THROWS_AS(rec.recommend(group_interactions(ds, g), 10, meter), BudgetExhausted);
}

TEST_CASE("recommend returns an empty list when every history is empty") {
  RatingsDataset ds = fixtures::four_user_matrix();
  Group g = fixtures::group12(ds);
  CfRecommender rec(ds, 50);
  CallMeter meter = CallMeter::unlimited();
  auto list = rec.recommend(group_interactions_without(ds, g, g.union_items()), 10, meter);
  CHECK(list.empty());
}

TEST_CASE("rec_score agrees with the oracle and the single-member list") {
  RatingsDataset ds = fixtures::four_user_matrix();
  oracle::Ratings r = oracle::snapshot(ds);
  CfRecommender rec(ds, 50);
  CallMeter meter = CallMeter::unlimited();

  double s1 = rec.rec_score(110, history_of(ds, 1), meter);
  double s2 = rec.rec_score(110, history_of(ds, 2), meter);
  CHECK(meter.metric_calls() == 2);
  CHECK(s1 == doctest::Approx(0.32599061762885617).epsilon(1e-13));
  CHECK(s2 == doctest::Approx(0.31987990703948438).epsilon(1e-13));
  CHECK(s1 == doctest::Approx(oracle::predict_item(r, r.by_user.at(1), 110, 50)).epsilon(1e-14));

  // Consistency with a single-member group list.
  Group solo = Group::make(ds, {1});
  auto list = rec.recommend(group_interactions(ds, solo), 10, meter);
  const int rank = list.rank_of(110);
  REQUIRE(rank > 0);
  CHECK(list.score_at(rank) == doctest::Approx(s1).epsilon(1e-14));
}

TEST_CASE("rec_score handles cold starts and rejects seen targets") {
  RatingsDataset ds = fixtures::four_user_matrix();
  CfRecommender rec(ds, 50);
  CallMeter meter = CallMeter::unlimited();
  CHECK(rec.rec_score(110, History{}, meter) == 0.0);
  CHECK_THROWS_AS(rec.rec_score(10, history_of(ds, 1), meter), ValidationError);
}

TEST_CASE("fixture user with one co-rated neighbor gets that neighbor's rating") {
  DatasetBuilder b;
  b.add(2, 1, 0.8);   // the only dataset user: rated item 1 and the target
  b.add(2, 7, 0.9);
  RatingsDataset ds = b.build();
  CfRecommender rec(ds, 50);
  CallMeter meter = CallMeter::unlimited();
  History pseudo = {{1, 1.0}};
  // Single neighbor: weighted average collapses to the neighbor's rating.
  CHECK(rec.rec_score(7, pseudo, meter) == doctest::Approx(0.9).epsilon(1e-15));
}
