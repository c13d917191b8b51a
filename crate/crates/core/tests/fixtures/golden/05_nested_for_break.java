public class Main {
    public static void main(String[] args) {
        int n = 5;                                   // v1 s1
        for (int i = 0; i < n; i++)                  // loop1 v2 s2
            for (int j = 0; j < n; j++) {            // loop2 v3 s3 (depth 2)
                if (i + j > n) break;                // if1 s4, break1 s5
            }
    }
}
