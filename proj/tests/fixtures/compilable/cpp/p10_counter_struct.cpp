#include <iostream>

struct Counter {
  int hits = 0;
  int misses = 0;
  double ratio() const { return hits + misses == 0 ? 0.0 : double(hits) / (hits + misses); }
};

int main() {
  Counter c;
  for (int i = 0; i < 12; ++i) {
    if (i % 3 == 0)
      ++c.misses;
    else
      ++c.hits;
  }
  std::cout << c.ratio() << "\n";
  return 0;
}
