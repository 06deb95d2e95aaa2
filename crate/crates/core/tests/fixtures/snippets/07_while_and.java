class Snippet {
    void m(int a, int b) {
        while (a > 0 && b > 0) {
            a--;
        }
    }
}
