#include <iostream>
#include <vector>

template <typename T, typename F>
std::vector<T> keep_if(const std::vector<T>& in, F pred) {
  std::vector<T> out;
  for (const T& x : in)
    if (pred(x)) out.push_back(x);
  return out;
}

int main() {
  std::vector<int> xs = {1, 2, 3, 4, 5, 6, 7};
  auto odd = keep_if(xs, [](int x) { return x % 2 != 0; });
  std::cout << odd.size() << "\n";
  return 0;
}
