import java.io.*;

public class Main {
    public static void main(String[] args) throws IOException {
        BufferedReader br = new BufferedReader(new InputStreamReader(System.in));  // v1 s1
        int n;                                                                      // v2 s2
        try {                                                                       // s3
            n = Integer.parseInt(br.readLine().trim());                            // s4
        } catch (NumberFormatException e) {
            n = 0;                                                                  // s5
        }
        if (n < 0) throw new IllegalArgumentException("negative");                 // if1 s6, s7
        while (n > 1) n /= 2;                                                       // loop1 s8, s9
        System.out.println(n);                                                      // s10
    }
}
