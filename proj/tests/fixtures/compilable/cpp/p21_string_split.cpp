#include <iostream>
#include <string>
#include <vector>

static std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

int main() {
  auto parts = split("usr:local:bin", ':');
  std::cout << parts.size() << " " << parts[1] << "\n";
  return 0;
}
