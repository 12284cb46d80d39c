#include <cstddef>
#include <iostream>

class Buffer {
 public:
  explicit Buffer(std::size_t n) : size_(n), data_(new int[n]()) {}
  ~Buffer() { delete[] data_; }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  int& operator[](std::size_t i) { return data_[i]; }
  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
  int* data_;
};

int main() {
  Buffer b(8);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = static_cast<int>(i * i);
  std::cout << b[7] - b[3] << "\n";
  return 0;
}
